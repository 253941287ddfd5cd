//! JSON envelopes, 12-significant-digit rounding and atomic file output.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::error::Result;
use crate::pick::BisectOptions;
use crate::spectral::DEFAULT_REL_TOL;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PSEUDOMULT_OUT_DIR";

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub inertia_rel_tol: f64,
    pub bisect_rel_tol: f64,
    pub bisect_tol: f64,
}

impl Tolerances {
    pub fn new(inertia_rel_tol: f64, bisect: &BisectOptions) -> Self {
        Tolerances {
            inertia_rel_tol,
            bisect_rel_tol: bisect.rel_tol,
            bisect_tol: bisect.tol,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::new(DEFAULT_REL_TOL, &BisectOptions::default())
    }
}

/// Common header of every JSON document.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub tool_version: String,
    pub kernel_id: String,
    pub function_id: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub warnings: Vec<String>,
}

impl Envelope {
    pub fn new(kernel_id: &str, function_id: &str, seed: Option<u64>, tolerances: Tolerances) -> Self {
        Envelope {
            tool_version: TOOL_VERSION.to_string(),
            kernel_id: kernel_id.to_string(),
            function_id: function_id.to_string(),
            seed,
            tolerances,
            warnings: Vec::new(),
        }
    }

    /// Wraps `payload` under `key`, merging the payload's own `warnings`
    /// into the envelope's.
    pub fn wrap<T: Serialize>(&self, key: &str, payload: &T) -> Result<Value> {
        let mut body = serde_json::to_value(payload)?;
        let mut warnings = self.warnings.clone();
        if let Some(Value::Array(ws)) = body.get("warnings") {
            for w in ws {
                if let Value::String(s) = w {
                    if !warnings.contains(s) {
                        warnings.push(s.clone());
                    }
                }
            }
        }
        if let Value::Object(map) = &mut body {
            map.remove("warnings");
        }
        let mut doc = Map::new();
        doc.insert("tool_version".into(), Value::String(self.tool_version.clone()));
        doc.insert("kernel_id".into(), Value::String(self.kernel_id.clone()));
        doc.insert("function_id".into(), Value::String(self.function_id.clone()));
        doc.insert("seed".into(), self.seed.map_or(Value::Null, |s| Value::from(s)));
        doc.insert("tolerances".into(), serde_json::to_value(&self.tolerances)?);
        doc.insert("warnings".into(), Value::from(warnings));
        doc.insert(key.into(), body);
        Ok(doc.into())
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every floating-point number in `v`; integers are left alone.
pub fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_sig).and_then(Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON text of `v` after rounding, newline-terminated.
pub fn to_json_text(v: &Value) -> Result<String> {
    let mut v = v.clone();
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Writes `contents` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        e.into()
    })
}

/// Output directory: the explicit one, else [`OUT_DIR_ENV`], else `reports`.
pub fn output_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("reports"))
}

/// 12-significant-digit decimal text, `inf` for infinities.
pub fn fmt_number(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    let r = round_sig(x);
    if r != 0.0 && !(1e-6..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}
