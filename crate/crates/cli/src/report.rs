use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use topoforms_core::lattice::Level;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// One refinement level of a named quantity.
#[derive(Debug, Clone, Serialize)]
pub struct LevelRecord {
    pub quantity: String,
    pub shape: Vec<usize>,
    pub h: f64,
    pub value: f64,
}

impl LevelRecord {
    pub fn from_level(quantity: &str, l: &Level) -> Self {
        Self { quantity: quantity.into(), shape: l.shape.clone(), h: l.h, value: l.error }
    }
}

/// A single JSON line. `pass` is recomputable from `levels`,
/// `measured_order` and `tolerances` as described per command.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub levels: Vec<LevelRecord>,
    /// Smallest fitted order over the studies in `details.orders`; null
    /// when no refinement study applies or the error vanished exactly.
    pub measured_order: Option<f64>,
    pub pass: bool,
    pub tolerances: BTreeMap<String, f64>,
    pub details: Value,
}

impl VerificationReport {
    pub fn new(command: &str, seed: u64, tolerances: &Tolerances) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            seed,
            levels: Vec::new(),
            measured_order: None,
            pass: false,
            tolerances: tolerances.values.clone(),
            details: Value::Object(Default::default()),
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        if let Value::Object(map) = &mut self.details {
            map.insert(key.into(), v);
        }
    }

    /// Records a fitted order under `details.orders` and folds it into
    /// `measured_order`.
    pub fn order(&mut self, name: &str, p: f64) {
        if let Value::Object(map) = &mut self.details {
            let orders = map.entry("orders").or_insert_with(|| Value::Object(Default::default()));
            if let Value::Object(o) = orders {
                o.insert(name.into(), finite(p));
            }
        }
        if p.is_finite() {
            self.measured_order = Some(self.measured_order.map_or(p, |m| m.min(p)));
        }
    }

    pub fn to_json_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["command", "quantity", "shape", "h", "value"])?;
        for l in &self.levels {
            let shape = l.shape.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x");
            w.write_record([&self.command, &l.quantity, &shape, &l.h.to_string(), &l.value.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Non-finite values become strings so that the sentinel survives JSON.
pub fn finite(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

/// Named thresholds with defaults per command and `--tol` overrides.
#[derive(Debug, Clone)]
pub struct Tolerances {
    values: BTreeMap<String, f64>,
}

impl Tolerances {
    pub fn new(defaults: &[(&str, f64)], overrides: &[(String, f64)]) -> Result<Self, CliError> {
        let mut values: BTreeMap<String, f64> = defaults.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        for (k, v) in overrides {
            match values.get_mut(k) {
                Some(slot) => *slot = *v,
                None => {
                    let known = values.keys().cloned().collect::<Vec<_>>().join(", ");
                    return Err(CliError::Usage(format!("unknown tolerance `{k}` (known: {known})")));
                }
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> f64 {
        self.values[key]
    }
}
