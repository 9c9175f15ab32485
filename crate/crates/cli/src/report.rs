//! Output records. Field elements are integer encodings; `field` names the
//! (p, k) they live in.

use hermlcd::constructions::FamilyParams;
use hermlcd::cyclic::DistanceReport;
use hermlcd::gf::Elem;
use hermlcd::odsm::SweepRow;
use hermlcd::{CyclicCode, Field};
use serde::Serialize;

#[derive(Serialize)]
pub struct FieldHeader {
    pub p: u32,
    pub k: u32,
}

impl FieldHeader {
    pub fn of(f: &Field) -> Self {
        FieldHeader { p: f.p(), k: f.k() }
    }
}

#[derive(Serialize)]
pub struct CosetEntry {
    pub leader: usize,
    pub members: Vec<usize>,
}

#[derive(Serialize)]
pub struct CosetsReport {
    pub n: usize,
    pub base: u64,
    pub m: u32,
    pub cosets: Vec<CosetEntry>,
}

#[derive(Serialize)]
pub struct FactorEntry {
    pub leader: usize,
    pub coeffs: Vec<Elem>,
}

#[derive(Serialize)]
pub struct FactorReport {
    pub field: FieldHeader,
    pub n: usize,
    pub q: u64,
    pub u: usize,
    pub v: usize,
    pub self_conjugate: Vec<FactorEntry>,
    pub paired: Vec<[FactorEntry; 2]>,
}

#[derive(Serialize)]
pub struct CodeSummary {
    pub k: usize,
    pub generator: Vec<Elem>,
    pub defining_set: Vec<usize>,
}

impl CodeSummary {
    pub fn of(code: &CyclicCode) -> Self {
        CodeSummary {
            k: code.k(),
            generator: code.generator().coeffs().to_vec(),
            defining_set: code.defining_set().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub field: FieldHeader,
    pub n: usize,
    pub q: u64,
    pub u: usize,
    pub v: usize,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codes: Option<Vec<CodeSummary>>,
}

#[derive(Serialize)]
pub struct ConstructReport {
    pub field: FieldHeader,
    pub params: FamilyParams,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub k_formula: Option<i64>,
    pub d_bound_formula: usize,
    pub bch_bound: usize,
    pub hermitian_lcd: bool,
    pub generator: Vec<Elem>,
    pub defining_set: Vec<usize>,
    pub distance: Option<DistanceReport>,
}

#[derive(Serialize)]
pub struct DescribeReport {
    pub field: FieldHeader,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub generator: Vec<Elem>,
    pub defining_set: Vec<usize>,
    pub hermitian_lcd: bool,
    pub bch_bound: usize,
    pub distance: Option<DistanceReport>,
}

#[derive(Serialize)]
pub struct SetupReport {
    pub field: FieldHeader,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Elem>,
    pub g: Vec<Vec<Elem>>,
    pub h: Vec<Vec<Elem>>,
}

#[derive(Serialize)]
pub struct MaskReport {
    pub field: FieldHeader,
    pub x: Vec<Elem>,
    pub y: Vec<Elem>,
    pub z: Vec<Elem>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub field: FieldHeader,
    pub detected: bool,
    pub recovered_y: Vec<Elem>,
}

#[derive(Serialize)]
pub struct SweepOutput {
    pub field: FieldHeader,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    pub sampled: bool,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

#[derive(Serialize)]
pub struct ErrorReport<'a> {
    pub error: &'a str,
    pub message: String,
}
