//! Truncated multivariate formal power series over `RatFunc`, with the
//! substitution, Pade resummation, and root-of-unity evaluation machinery.

mod pade;
mod ring;
#[allow(clippy::module_inception)]
mod series;
mod transform;
mod trig;

pub use pade::{pade, pade_auto, UniRatFunc};
pub use ring::SeriesRing;
pub use series::TruncatedSeries;
pub use transform::{is_root_of_unity, ExtendedDegree, TransformSpec};
pub use trig::{cot_combination, half_tan, trig_series, TrigKind};

#[allow(unused_imports)]
pub(crate) use series::{binomial, factorial};
