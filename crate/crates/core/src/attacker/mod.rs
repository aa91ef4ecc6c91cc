//! Attacker solvers: which districts to manipulate, and how, so that the
//! preferred candidate survives the defender's best recount.

mod pd_regular;
mod search;
mod steal;

pub use pd_regular::{man_pd_regular, verify_regular_attack};
pub use search::{man_decide_brute, man_decide_brute_with, man_decide_static, man_decide_static_with};
pub use steal::{district_min_steal, enumerate_distortions};
