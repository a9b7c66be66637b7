//! Hand-built schemes for specific joins.

mod c5_join;
mod c5_minus;
mod c5_power;
pub mod pentagon;
mod w6;

pub use c5_join::{scheme_table1, table1_rules, C5JoinScheme};
pub use c5_minus::{scheme_table3, TABLE3_ROWS};
pub use c5_power::{scheme_table2, table2_rules, C5PowerScheme, CopyProfile};
pub use pentagon::{central_copy, central_element, classify_trace, is_arc, TripleStatus};
pub use w6::{scheme_table4, scheme_w6x2, W6ExtraScheme, W6JoinScheme};
