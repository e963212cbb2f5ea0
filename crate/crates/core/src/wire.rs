//! JSON and CSV encodings of forms, basis vectors, tables, kernels and traces.
//!
//! Exact rationals travel as decimal-integer strings (`num`, `den`) in lowest
//! terms with a positive denominator.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gz::GzVector;
use crate::markov::{SpectralTable, TransitionKernel};
use crate::sampler::SampledPath;
use crate::subset::Subset;
use crate::tensor::SquareFreeForm;
use crate::ygraph::TwoRowTableau;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub vars: Vec<usize>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<TermJson>,
}

pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(format!("not a decimal integer: {s:?}")))
}

pub fn parse_fraction(num: &str, den: &str) -> Result<BigRational> {
    let den = parse_int(den)?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(parse_int(num)?, den))
}

impl From<&SquareFreeForm> for FormJson {
    fn from(f: &SquareFreeForm) -> Self {
        FormJson {
            n: f.n(),
            k: f.k(),
            terms: f
                .terms()
                .map(|(s, c)| TermJson { vars: s.to_vec(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }
}

impl TryFrom<&FormJson> for SquareFreeForm {
    type Error = Error;

    fn try_from(j: &FormJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                if !t.vars.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::Parse(format!("variables {:?} are not strictly increasing", t.vars)));
                }
                if t.vars.iter().any(|&v| v == 0 || v > j.n) {
                    return Err(Error::Parse(format!("variables {:?} outside 1..={}", t.vars, j.n)));
                }
                Ok((Subset::from_elements(t.vars.iter().copied()), parse_fraction(&t.num, &t.den)?))
            })
            .collect::<Result<Vec<_>>>()?;
        SquareFreeForm::from_terms(j.n, j.k, terms)
    }
}

pub fn form_to_json(f: &SquareFreeForm) -> String {
    serde_json::to_string(&FormJson::from(f)).expect("serializable")
}

pub fn form_from_json(s: &str) -> Result<SquareFreeForm> {
    let j: FormJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    SquareFreeForm::try_from(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GzVectorJson {
    pub k: usize,
    pub m: usize,
    pub second_row: Vec<usize>,
    pub form: FormJson,
    pub norm_sq: String,
}

impl From<&GzVector> for GzVectorJson {
    fn from(h: &GzVector) -> Self {
        GzVectorJson {
            k: h.k(),
            m: h.m,
            second_row: h.tableau.second_row().to_vec(),
            form: FormJson::from(&h.form),
            norm_sq: fraction_string(&h.norm_sq),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub second_row: Vec<usize>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralTableJson {
    pub level: usize,
    pub entries: Vec<TableEntryJson>,
}

impl From<&SpectralTable> for SpectralTableJson {
    fn from(t: &SpectralTable) -> Self {
        SpectralTableJson {
            level: t.level(),
            entries: t
                .entries()
                .map(|(u, p)| TableEntryJson {
                    second_row: u.second_row().to_vec(),
                    num: p.numer().to_string(),
                    den: p.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SpectralTableJson> for SpectralTable {
    type Error = Error;

    fn try_from(j: &SpectralTableJson) -> Result<Self> {
        let entries = j
            .entries
            .iter()
            .map(|e| Ok((TwoRowTableau::new(j.level, e.second_row.clone())?, parse_fraction(&e.num, &e.den)?)))
            .collect::<Result<Vec<_>>>()?;
        SpectralTable::new(j.level, entries)
    }
}

pub const KERNEL_CSV_HEADER: &str = "n,k,bit,p_stay_num,p_stay_den,p_up_num,p_up_den";

/// One row per `(n, k)`; the `bit` column is empty for central kernels.
pub fn kernel_csv(kernel: &TransitionKernel) -> String {
    let mut out = String::from(KERNEL_CSV_HEADER);
    out.push('\n');
    for ((n, k), e) in kernel.entries() {
        let bit = e.bit.map(|b| b.to_string()).unwrap_or_default();
        let t = &e.transition;
        writeln!(out, "{n},{k},{bit},{},{},{},{}", t.stay.numer(), t.stay.denom(), t.up.numer(), t.up.denom())
            .expect("string write");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelRowJson {
    pub n: usize,
    pub k: usize,
    pub bit: Option<u8>,
    pub p_stay: String,
    pub p_up: String,
}

pub fn kernel_rows(kernel: &TransitionKernel) -> Vec<KernelRowJson> {
    kernel
        .entries()
        .map(|((n, k), e)| KernelRowJson {
            n,
            k,
            bit: e.bit,
            p_stay: fraction_string(&e.transition.stay),
            p_up: fraction_string(&e.transition.up),
        })
        .collect()
}

pub const TRACE_CSV_HEADER: &str = "step,k,j";

/// Paths written back to back; `step` restarts at 0 for each path.
pub fn trace_csv(paths: &[SampledPath]) -> String {
    let mut out = String::from(TRACE_CSV_HEADER);
    out.push('\n');
    for path in paths {
        for (step, (&k, j)) in path.ks.iter().zip(path.js()).enumerate() {
            writeln!(out, "{step},{k},{j}").expect("string write");
        }
    }
    out
}
