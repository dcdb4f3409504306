//! The local field K_inf = F_q((t^-1)): certified Laurent arithmetic, the
//! additive character psi with exact Z[zeta_p] values, Haar quadrature for
//! locally constant integrands, and the Farey dissection of the unit torus.

pub mod cyclo;
pub mod farey;
pub mod laurent;
pub mod psi;
pub mod quadrature;

pub use cyclo::CycInt;
pub use farey::{farey_dissection, locate_ball, measure_sum_exact, FareyBall};
pub use laurent::{expand_fraction, LaurentNum};
pub use psi::{char_fraction, char_fraction_exponent, psi, PsiTable};
pub use quadrature::{haar_quadrature, Ball, QScaled};
