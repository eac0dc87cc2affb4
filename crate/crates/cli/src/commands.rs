use std::fs;
use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use lazard_core::cycles::{
    blowup_tower_telescope, double_point_relation, omega_relation_generator, BlowupStep,
    DoublePointDatum, RelationWitness, SpaceLabel,
};
use lazard_core::fgl::FormalGroupLaw;
use lazard_core::series::TruncatedSeries;
use lazard_core::snc::{check_properties, divisor_class, product_class, FaceClassVector, SncInput};
use lazard_core::Error;

use crate::{Common, CyclesCommand, FglCommand, SncCommand};

pub enum Failure {
    Io(String),
    Invalid(Value),
}

type Outcome = Result<Value, Failure>;

fn invalid(kind: &str, message: impl ToString) -> Failure {
    Failure::Invalid(json!({ "error": kind, "message": message.to_string() }))
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::MixedBackend(..) => "mixed_backend",
            Error::OutOfTruncation { .. } => "out_of_truncation",
            Error::InvalidIndex(..) => "invalid_index",
            Error::VariableMismatch(..) => "variable_mismatch",
            Error::OrderMismatch(..) => "order_mismatch",
            Error::NonzeroConstantTerm(_) => "nonzero_constant_term",
            Error::UnassignedVariable(_) => "unassigned_variable",
            Error::InsufficientOrder { .. } => "insufficient_order",
            Error::DimBoundMismatch(..) => "dim_bound_mismatch",
            Error::NotReversible(_) => "not_reversible",
            Error::InvalidConfiguration(_) => "invalid_configuration",
            Error::InvalidCycle(_) => "invalid_cycle",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
        };
        invalid(kind, e)
    }
}

fn to_value<T: Serialize>(t: &T) -> Outcome {
    serde_json::to_value(t).map_err(|e| Failure::Io(e.to_string()))
}

/// Reads the input argument as a file, standard input, or inline JSON.
fn read_input(common: &Common) -> Result<Value, Failure> {
    let Some(arg) = &common.input else {
        return Err(Failure::Io(
            "this command needs an input (path, inline JSON or -)".into(),
        ));
    };
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        s
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.clone()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Io(format!("reading {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Io(format!("malformed JSON: {e}")))
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| invalid("schema", e))
}

fn law(common: &Common) -> Result<FormalGroupLaw, Failure> {
    Ok(FormalGroupLaw::new(
        common.backend.with_order(common.order),
        common.order,
    )?)
}

pub fn emit(common: &Common, value: &Value) -> std::io::Result<()> {
    let mut text = if common.pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    text.push('\n');
    match &common.output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

#[derive(serde::Deserialize)]
struct Scalar {
    n: i64,
}

#[derive(serde::Deserialize)]
struct Vector {
    n: Vec<i64>,
}

pub fn fgl(cmd: FglCommand) -> (Common, Outcome) {
    match cmd {
        FglCommand::Inverse(common) => {
            let out = law(&common).and_then(|f| to_value(&f.inverse()));
            (common, out)
        }
        FglCommand::Nseries { n, common } => {
            let out = (|| {
                let n = match n {
                    Some(n) => n,
                    None => parse::<Scalar>(read_input(&common)?)?.n,
                };
                to_value(&law(&common)?.n_series(n))
            })();
            (common, out)
        }
        FglCommand::Multilinear { n, common } => {
            let out = (|| {
                let ns = match n {
                    Some(ns) => ns,
                    None => parse::<Vector>(read_input(&common)?)?.n,
                };
                to_value(&law(&common)?.multi_linear(&ns)?)
            })();
            (common, out)
        }
        FglCommand::Decompose(common) => {
            let out = (|| {
                let input = read_input(&common)?;
                let series = if input.get("n").is_some() {
                    law(&common)?.multi_linear(&parse::<Vector>(input)?.n)?
                } else {
                    parse::<TruncatedSeries>(input)?
                };
                let parts = series.support_decompose()?;
                let entries: Vec<Value> = parts
                    .iter()
                    .map(|(face, part)| Ok(json!({ "support": face, "series": to_value(part)? })))
                    .collect::<Result<_, Failure>>()?;
                Ok(Value::Array(entries))
            })();
            (common, out)
        }
    }
}

/// Parses and validates the configuration, and enforces the truncation
/// order before anything is evaluated.
fn snc_input(common: &Common) -> Result<SncInput, Failure> {
    let input: SncInput = parse(read_input(common)?)?;
    if let Err(violations) = input.config.validate() {
        return Err(Failure::Invalid(json!({
            "error": "invalid_configuration",
            "message": "the configuration is not a valid s.n.c. face poset",
            "violations": violations,
        })));
    }
    if common.order < input.config.ambient_dim {
        return Err(Error::InsufficientOrder {
            order: common.order,
            dim_bound: input.config.ambient_dim,
        }
        .into());
    }
    Ok(input)
}

fn required(v: Option<Vec<i64>>, name: &str) -> Result<Vec<i64>, Failure> {
    v.ok_or_else(|| invalid("schema", format!("missing field `{name}`")))
}

pub fn snc(cmd: SncCommand) -> (Common, Outcome) {
    let (common, which) = match cmd {
        SncCommand::Divclass(c) => (c, 0),
        SncCommand::Prodclass(c) => (c, 1),
        SncCommand::Normalform(c) => (c, 2),
        SncCommand::CheckProperties(c) => (c, 3),
    };
    let out = (|| {
        let input = snc_input(&common)?;
        let c = &input.config;
        match which {
            0 => to_value(&divisor_class(c, &required(input.d, "D")?, &law(&common)?)?),
            1 => {
                let (d, e) = (required(input.d, "D")?, required(input.e, "E")?);
                to_value(&product_class(c, &d, &e, &law(&common)?)?)
            }
            2 => {
                let entries = input
                    .entries
                    .ok_or_else(|| invalid("schema", "missing field `entries`"))?;
                to_value(&FaceClassVector::from_json_entries(c, entries)?.normal_form())
            }
            _ => {
                let (d, e) = (required(input.d, "D")?, required(input.e, "E")?);
                to_value(&check_properties(c, &d, &e, &law(&common)?)?)
            }
        }
    })();
    (common, out)
}

#[derive(serde::Deserialize)]
struct Tower {
    target: SpaceLabel,
    steps: Vec<BlowupStep>,
}

pub fn cycles(cmd: CyclesCommand) -> (Common, Outcome) {
    match cmd {
        CyclesCommand::Dpr(common) => {
            let out = (|| {
                let datum: DoublePointDatum = parse(read_input(&common)?)?;
                to_value(&double_point_relation(&datum)?)
            })();
            (common, out)
        }
        CyclesCommand::BlowupTower(common) => {
            let out = (|| {
                let tower: Tower = parse(read_input(&common)?)?;
                to_value(&blowup_tower_telescope(&tower.steps, &tower.target)?)
            })();
            (common, out)
        }
        CyclesCommand::Relgen(common) => {
            let out = (|| {
                let witness: RelationWitness = parse(read_input(&common)?)?;
                to_value(&omega_relation_generator(&witness, &law(&common)?)?)
            })();
            (common, out)
        }
    }
}
