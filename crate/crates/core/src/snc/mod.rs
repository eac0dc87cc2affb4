//! Strict normal crossing divisors modelled combinatorially, with the
//! divisor class, product class, divisor-operator action and the
//! section-axiom normal form.

mod classes;
mod config;
mod properties;

pub use classes::{divisor_class, product_class, FaceClassVector};
pub use config::{
    restrict_to_component, validate_config, Component, Restriction, SncConfiguration, Violation,
};
pub use properties::{
    check_operator_agreement, check_properties, check_reduction, check_symmetry,
    transported_restriction, PropertyReport, PropertyResult, Status,
};

use serde::Deserialize;

/// The JSON input shared by the `snc` commands:
/// `{"ambient_dim":2,"components":[...],"faces":[[1],[2],[1,2]],"D":[1,1],"E":[0,1]}`.
#[derive(Debug, Clone, Deserialize)]
pub struct SncInput {
    #[serde(flatten)]
    pub config: SncConfiguration,
    #[serde(rename = "D", default)]
    pub d: Option<Vec<i64>>,
    #[serde(rename = "E", default)]
    pub e: Option<Vec<i64>>,
    #[serde(default)]
    pub entries: Option<serde_json::Value>,
}
