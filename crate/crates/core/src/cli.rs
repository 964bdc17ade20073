//! Problem files, the command pipeline and report rendering behind the
//! `disconnected` binary.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abgroup::FGAbelianGroup;
use crate::autbrd::{diagram_automorphisms, is_brd_automorphism, validate_ad, AdHom};
use crate::cohomology::{
    cohomologous, cohomology_group, differential, eckmann_check, is_cocycle, Cochain,
    DEFAULT_COHOMOLOGY_BUDGET, DEFAULT_MAX_K,
};
use crate::error::Error;
use crate::exactlin::IntMatrix;
use crate::extension::{build_extension, classify, extract_cocycle, Classification};
use crate::grouptable::{FiniteGroup, DEFAULT_GROUP_CAP};
use crate::rootdatum::{BasedRootDatum, RootDatum, DEFAULT_WEYL_CAP};

pub const PROBLEM_SCHEMA: &str = "disconnected-problem/1";
pub const REPORT_SCHEMA: &str = "disconnected-report/1";

/// An exact integer in reports: a JSON number when it fits in `i64`,
/// otherwise a decimal string. Both forms are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            U(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(v) => Ok(Int(v.into())),
            Raw::U(v) => Ok(Int(v.into())),
            Raw::S(s) => s
                .trim()
                .parse::<BigInt>()
                .map(Int)
                .map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    m.row_vecs().iter().map(|r| ints(r)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Classify,
    Weyl,
    Dynkin,
    Center,
    Check,
}

// ---------------------------------------------------------------- input

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    pub root_datum: RootDatumBlock,
    pub gamma: GammaBlock,
    /// One matrix per generator of Γ; omitted means trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ad: Option<Vec<Vec<Vec<Int>>>>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumBlock {
    pub rank: usize,
    pub roots: Vec<Vec<Int>>,
    pub coroots: Vec<Vec<Int>>,
    /// Indices of the simple roots; a base is chosen when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GammaBlock {
    Cyclic {
        order: usize,
    },
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_k: Option<usize>,
    /// Cap on cochain coordinates in one cohomology computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub based: BasedRootDatum,
    pub ad: AdHom,
    pub options: Options,
}

impl Problem {
    pub fn gamma(&self) -> &FiniteGroup {
        self.ad.gamma()
    }

    pub fn max_k(&self) -> usize {
        self.options.max_k.unwrap_or(DEFAULT_MAX_K)
    }

    pub fn budget(&self) -> usize {
        self.options.budget.unwrap_or(DEFAULT_COHOMOLOGY_BUDGET)
    }

    pub fn weyl_cap(&self) -> usize {
        self.options.weyl_cap.unwrap_or(DEFAULT_WEYL_CAP)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Parse,
    Validation,
    Budget,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Parse | ErrorKind::Validation => 1,
            ErrorKind::Budget => 2,
            ErrorKind::Internal => 3,
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Validation,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.kind {
            ErrorKind::Parse => "parse error",
            ErrorKind::Validation => "validation error",
            ErrorKind::Budget => "budget exceeded",
            ErrorKind::Internal => "internal error",
        };
        write!(f, "{kind}: {}", self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::BudgetExceeded { .. } => ErrorKind::Budget,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Validation,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses problem text; errors carry the JSON path and line/column.
pub fn parse_problem_str(text: &str) -> CliResult<ProblemFile> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        CliError {
            kind: ErrorKind::Parse,
            message: format!("{} (at field `{path}`)", e.into_inner()),
        }
    })?;
    de.end().map_err(|e| CliError {
        kind: ErrorKind::Parse,
        message: e.to_string(),
    })?;
    Ok(file)
}

pub fn parse_problem(path: &Path) -> CliResult<ProblemFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        kind: ErrorKind::Parse,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_problem_str(&text)
}

fn matrix_from_block(rows: &[Vec<Int>], rank: usize, what: &str) -> CliResult<IntMatrix> {
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(CliError::validation(format!("{what} must be a {rank}x{rank} matrix")));
    }
    Ok(IntMatrix::from_rows(rank, rows.iter().map(|r| bigs(r)))?)
}

impl ProblemFile {
    pub fn new(based: &BasedRootDatum, gamma: GammaBlock, ad: Option<Vec<IntMatrix>>) -> Self {
        let d = based.datum();
        ProblemFile {
            schema: PROBLEM_SCHEMA.to_string(),
            root_datum: RootDatumBlock {
                rank: d.rank(),
                roots: d.roots().iter().map(|r| ints(r)).collect(),
                coroots: d.coroots().iter().map(|r| ints(r)).collect(),
                simple: Some(based.simple_indices().to_vec()),
            },
            gamma,
            ad: ad.map(|ms| ms.iter().map(matrix_rows).collect()),
            options: Options::default(),
        }
    }

    /// Builds and validates the root datum, Γ and Ad.
    pub fn validate(&self) -> CliResult<Problem> {
        if self.schema != PROBLEM_SCHEMA {
            return Err(CliError::validation(format!(
                "unsupported schema {:?}, expected {PROBLEM_SCHEMA:?}",
                self.schema
            )));
        }
        let rd = &self.root_datum;
        let datum = RootDatum::new(
            rd.rank,
            rd.roots.iter().map(|r| bigs(r)).collect(),
            rd.coroots.iter().map(|r| bigs(r)).collect(),
        );
        if let Err(v) = datum.validate() {
            return Err(CliError::validation(format!("root datum: {v}")));
        }
        let based = match &rd.simple {
            Some(simple) => BasedRootDatum::new(datum, simple.clone())?,
            None => BasedRootDatum::with_generic_base(datum)?,
        };
        let cap = self.options.group_cap.unwrap_or(DEFAULT_GROUP_CAP);
        let (gamma, explicit_gens) = match &self.gamma {
            GammaBlock::Cyclic { order } => {
                if *order == 0 {
                    return Err(CliError::validation("gamma: order must be positive"));
                }
                if *order > cap {
                    return Err(Error::BudgetExceeded {
                        what: "group order",
                        cap,
                    }
                    .into());
                }
                (FiniteGroup::cyclic(*order), true)
            }
            GammaBlock::Permutations { degree, generators } => {
                (FiniteGroup::from_generators(*degree, generators, cap)?.0, true)
            }
            GammaBlock::Table { table, generators } => match generators {
                Some(g) => (FiniteGroup::from_table(table, g.clone())?, true),
                None => {
                    let group = FiniteGroup::from_table(table, Vec::new())?;
                    let gens = group.small_generating_set();
                    (group.with_generators(gens)?, false)
                }
            },
        };
        let ad = match &self.ad {
            None => AdHom::trivial(gamma, rd.rank),
            Some(blocks) => {
                if !explicit_gens && !blocks.is_empty() {
                    return Err(CliError::validation(
                        "gamma given as a table needs explicit generators to attach Ad matrices",
                    ));
                }
                let mats = blocks
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix_from_block(m, rd.rank, &format!("ad[{i}]")))
                    .collect::<CliResult<Vec<_>>>()?;
                for (i, m) in mats.iter().enumerate() {
                    if let Err(v) = is_brd_automorphism(&based, m)? {
                        return Err(CliError::validation(format!("ad[{i}]: {v}")));
                    }
                }
                AdHom::from_generator_images(gamma, rd.rank, mats)?
            }
        };
        if let Err(v) = validate_ad(&based, &ad)? {
            return Err(CliError::validation(format!("ad: {v}")));
        }
        Ok(Problem {
            based,
            ad,
            options: self.options.clone(),
        })
    }
}

// ---------------------------------------------------------------- reports

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Classify(ClassifyReport),
    Weyl(WeylReport),
    Dynkin(DynkinReport),
    Center(CenterReport),
    Check(CheckReport),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: String,
    pub error: CliError,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterReport {
    pub torus_rank: usize,
    pub invariant_factors: Vec<Int>,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_lattice_index: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorAction {
    pub gamma_element: usize,
    pub ad: Vec<Vec<Int>>,
    pub simple_root_permutation: Vec<usize>,
    /// Matrix of the map on `X*/ℤR` through which the element acts on `Z(G)`.
    pub character_map: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerReport {
    pub k: usize,
    pub level: Int,
    pub h2: Vec<Int>,
    pub image: Vec<Int>,
    pub comparison_is_isomorphism: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_comparison_is_isomorphism: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub coordinates: Vec<Int>,
    pub split: bool,
    /// `cocycle[a][b] = c(a, b)` in the coefficient coordinates.
    pub cocycle: Vec<Vec<Vec<Int>>>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub gamma_order: usize,
    pub gamma_generators: Vec<usize>,
    pub center: CenterReport,
    pub action: Vec<GeneratorAction>,
    pub h2_invariant_factors: Vec<Int>,
    pub class_count: Int,
    /// Coefficients are `Z(G)[level]` with these cyclic factors.
    pub coefficient_level: Int,
    pub coefficient_moduli: Vec<Int>,
    pub classes: Vec<ClassReport>,
    pub eckmann_check: bool,
    pub k_used: usize,
    pub tower: Vec<TowerReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub order: usize,
    pub generators: Vec<Vec<Vec<Int>>>,
    pub positive_roots: usize,
    pub positive_systems: usize,
    pub unique_element_per_system: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub source: usize,
    pub target: usize,
    pub labels: (Int, Int),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynkinReport {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeReport>,
    pub cartan_matrix: Vec<Vec<Int>>,
    /// Diagram automorphisms realized by based-datum automorphisms; absent
    /// for non-semisimple data, where the lift is not determined by the diagram.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_lifting: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

// ---------------------------------------------------------------- commands

/// Runs one command on a validated problem.
pub fn run(command: Command, problem: &Problem, seed: u64) -> CliResult<Report> {
    Ok(match command {
        Command::Classify => Report::Classify(classify_report(problem)?),
        Command::Weyl => Report::Weyl(weyl_report(problem)?),
        Command::Dynkin => Report::Dynkin(dynkin_report(problem)?),
        Command::Center => Report::Center(center_report(&problem.based)),
        Command::Check => Report::Check(check_report(problem, seed)?),
    })
}

fn center_report(based: &BasedRootDatum) -> CenterReport {
    let center = based.datum().center();
    CenterReport {
        torus_rank: center.group.torus_rank(),
        invariant_factors: ints(center.group.finite_part().invariant_factors()),
        description: center.group.to_string(),
        root_lattice_index: based
            .datum()
            .almost_product_check()
            .ok()
            .map(|a| Int(a.index)),
    }
}

fn weyl_report(problem: &Problem) -> CliResult<WeylReport> {
    let based = &problem.based;
    let w = based.weyl_generate(problem.weyl_cap())?;
    let systems = based.positive_systems(&w)?;
    let mut hit = vec![false; w.order()];
    for s in &systems {
        hit[s.weyl_element] = true;
    }
    Ok(WeylReport {
        order: w.order(),
        generators: w.generators.iter().map(matrix_rows).collect(),
        positive_roots: based.positive_roots().len(),
        positive_systems: systems.len(),
        unique_element_per_system: systems.len() == w.order() && hit.iter().all(|&h| h),
    })
}

fn dynkin_report(problem: &Problem) -> CliResult<DynkinReport> {
    let based = &problem.based;
    let d = based.dynkin();
    let (count, automorphisms, non_lifting) = if based.datum().is_semisimple() {
        let auts = diagram_automorphisms(based)?;
        (
            Some(auts.lifted.len()),
            auts.lifted.iter().map(|a| matrix_rows(a.matrix())).collect(),
            auts.non_lifting,
        )
    } else {
        (None, Vec::new(), Vec::new())
    };
    Ok(DynkinReport {
        vertices: d.vertices.clone(),
        edges: d
            .edges
            .iter()
            .map(|e| EdgeReport {
                source: e.source,
                target: e.target,
                labels: (Int(e.labels.0.clone()), Int(e.labels.1.clone())),
            })
            .collect(),
        cartan_matrix: matrix_rows(&based.cartan_matrix()),
        automorphism_count: count,
        automorphisms,
        non_lifting,
    })
}

fn classify_report(problem: &Problem) -> CliResult<ClassifyReport> {
    let c = classify(&problem.based, &problem.ad, problem.max_k(), problem.budget())?;
    report_from_classification(problem, &c)
}

fn report_from_classification(problem: &Problem, c: &Classification) -> CliResult<ClassifyReport> {
    let gamma = problem.gamma();
    let action = gamma
        .generators()
        .iter()
        .map(|&g| {
            let m = problem.ad.image(g);
            let perm = is_brd_automorphism(&problem.based, m)?
                .map_err(|v| Error::internal(format!("validated Ad image fails: {v}")))?;
            Ok(GeneratorAction {
                gamma_element: g,
                ad: matrix_rows(m),
                simple_root_permutation: perm,
                character_map: matrix_rows(&c.character_maps[g]),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let h = &c.stable.cohomology;
    let coeff = h.module().coeff();
    let n = gamma.order();
    let classes = c
        .descriptors
        .iter()
        .map(|d| {
            let rep = &d.h2_class.representative;
            let cocycle = (0..n)
                .map(|a| (0..n).map(|b| ints(rep.value(&[a, b]))).collect())
                .collect();
            ClassReport {
                coordinates: ints(&d.h2_class.coordinates),
                split: d.split,
                cocycle,
                relations: relations(problem, rep, coeff),
            }
        })
        .collect();
    Ok(ClassifyReport {
        gamma_order: n,
        gamma_generators: gamma.generators().to_vec(),
        center: center_report(&problem.based),
        action,
        h2_invariant_factors: ints(c.stable.group.invariant_factors()),
        class_count: Int(c.stable.group.order().unwrap_or_else(BigInt::zero)),
        coefficient_level: Int(c.stable.level().clone()),
        coefficient_moduli: ints(&coeff.moduli()),
        classes,
        eckmann_check: c.eckmann,
        k_used: c.stable.k_used,
        tower: c
            .stable
            .tower
            .iter()
            .map(|t| TowerReport {
                k: t.k,
                level: Int(t.level.clone()),
                h2: ints(t.h2.invariant_factors()),
                image: ints(t.image.invariant_factors()),
                comparison_is_isomorphism: t.comparison_is_isomorphism,
                image_comparison_is_isomorphism: t.image_comparison_is_isomorphism,
            })
            .collect(),
    })
}

/// Defining relations of the extension: `n_a n_b = z(c(a,b)) n_ab` and the
/// conjugation action of each generator lift.
fn relations(problem: &Problem, c: &Cochain, coeff: &FGAbelianGroup) -> Vec<String> {
    let gamma = problem.gamma();
    let mut out = Vec::new();
    for &g in gamma.generators() {
        out.push(format!("n{g} t n{g}^-1 = Ad({g})(t) for t in T, n{g} in N(T)"));
    }
    for a in 0..gamma.order() {
        for b in 0..gamma.order() {
            if a == gamma.identity() || b == gamma.identity() {
                continue;
            }
            let v = c.value(&[a, b]);
            let ab = gamma.mul(a, b);
            let zero = coeff.is_zero(v).unwrap_or(false);
            if zero {
                out.push(format!("n{a} n{b} = n{ab}"));
            } else {
                let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                out.push(format!("n{a} n{b} = z({}) n{ab}", coords.join(",")));
            }
        }
    }
    out
}

fn check_report(problem: &Problem, seed: u64) -> CliResult<CheckReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut results = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        results.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        })
    };
    let based = &problem.based;
    let datum = based.datum();
    push("root datum axioms", datum.validate().is_ok(), format!("{} roots", datum.root_count()));
    let permuted = (0..datum.root_count()).all(|b| {
        datum
            .reflection(b)
            .ok()
            .and_then(|m| datum.root_permutation(&m))
            .is_some()
    });
    push("reflections permute roots", permuted, String::new());
    let w = based.weyl_generate(problem.weyl_cap())?;
    let systems = based.positive_systems(&w)?;
    let mut ws: Vec<usize> = systems.iter().map(|s| s.weyl_element).collect();
    ws.sort_unstable();
    ws.dedup();
    push(
        "positive systems are a W-torsor",
        systems.len() == w.order() && ws.len() == w.order(),
        format!("|W| = {}, {} positive systems", w.order(), systems.len()),
    );
    let gamma = problem.gamma();
    let orders = gamma.element_orders();
    push(
        "Lagrange on gamma",
        orders.iter().all(|&o| gamma.order().is_multiple_of(o)),
        format!("|gamma| = {}", gamma.order()),
    );
    push("Ad is a homomorphism into Aut(B(G))", validate_ad(based, &problem.ad)?.is_ok(), String::new());

    let c = classify(based, &problem.ad, problem.max_k(), problem.budget())?;
    push("eckmann", c.eckmann, format!("H2 = {}", c.stable.group));
    let module = c.stable.cohomology.module().clone();
    let h = &c.stable.cohomology;
    let elements = module.coeff().elements()?;
    let random_element = |rng: &mut StdRng| elements[rng.gen_range(0..elements.len())].clone();
    let mut dd = true;
    for p in 0..2 {
        for _ in 0..4 {
            let mut x = Cochain::zero(&module, p);
            let tuples = if p == 0 { 1 } else { gamma.order() };
            for k in 0..tuples {
                let t: Vec<usize> = if p == 0 { vec![] } else { vec![k] };
                if p == 1 && k == gamma.identity() {
                    continue;
                }
                x.set(&module, &t, &random_element(&mut rng))?;
            }
            let d2 = differential(&module, &differential(&module, &x)?)?;
            dd &= d2.is_zero();
        }
    }
    push("d o d = 0 on random cochains", dd, String::new());
    let mut reps_ok = true;
    let mut shift_ok = true;
    let mut roundtrip_ok = true;
    for d in &c.descriptors {
        let rep = &d.h2_class.representative;
        reps_ok &= is_cocycle(&module, rep)?;
        let mut b = Cochain::zero(&module, 1);
        for g in 0..gamma.order() {
            if g != gamma.identity() {
                b.set(&module, &[g], &random_element(&mut rng))?;
            }
        }
        let shifted = rep.add(&module, &differential(&module, &b)?)?;
        shift_ok &= h.class_of(&shifted)? == d.h2_class.coordinates;
        if module.coeff().order_usize().unwrap_or(usize::MAX) * gamma.order() <= 512 {
            let e = build_extension(&module, rep)?;
            let back = extract_cocycle(e.group(), &module, &e.embedding(), &e.projection(), &e.canonical_section())?;
            roundtrip_ok &= cohomologous(&module, &back, rep)?.is_some();
        }
    }
    push("class representatives are cocycles", reps_ok, String::new());
    push("classes are invariant under random coboundaries", shift_ok, String::new());
    push("extension round trip", roundtrip_ok, String::new());
    let h1 = cohomology_group(&module, 1, problem.budget())?;
    push("eckmann in degree 1", eckmann_check(&h1)?, format!("H1 = {}", h1.group()));
    Ok(CheckReport { seed, results })
}

// ---------------------------------------------------------------- rendering

pub fn envelope(report: Report) -> Envelope {
    Envelope {
        schema: REPORT_SCHEMA.to_string(),
        report,
    }
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&envelope(report.clone())).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_error_json(e: &CliError) -> String {
    let r = ErrorReport {
        schema: REPORT_SCHEMA.to_string(),
        error: e.clone(),
        exit_code: e.exit_code(),
    };
    let mut s = serde_json::to_string_pretty(&r).expect("errors serialize");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> serde_json::Result<Envelope> {
    serde_json::from_str(text)
}

fn join(v: &[Int]) -> String {
    v.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(", ")
}

fn factors(v: &[Int]) -> String {
    if v.is_empty() {
        "0".to_string()
    } else {
        v.iter().map(|x| format!("Z/{}", x.0)).collect::<Vec<_>>().join(" + ")
    }
}

fn matrix_text(m: &[Vec<Int>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", join(r))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn render_text(report: &Report) -> String {
    let mut s = String::new();
    match report {
        Report::Center(c) => {
            let _ = writeln!(s, "Z(G) = {}", c.description);
            let _ = writeln!(s, "torus rank m = {}", c.torus_rank);
            let _ = writeln!(s, "finite part: {}", factors(&c.invariant_factors));
            if let Some(i) = &c.root_lattice_index {
                let _ = writeln!(s, "[X : ZR + (X ∩ (R^v)^perp)] = {}", i.0);
            }
        }
        Report::Weyl(w) => {
            let _ = writeln!(s, "|W| = {}", w.order);
            for (i, g) in w.generators.iter().enumerate() {
                let _ = writeln!(s, "s{i} = {}", matrix_text(g));
            }
            let _ = writeln!(s, "positive roots: {}", w.positive_roots);
            let _ = writeln!(
                s,
                "positive systems: {} (one Weyl element each: {})",
                w.positive_systems, w.unique_element_per_system
            );
        }
        Report::Dynkin(d) => {
            let _ = writeln!(s, "vertices: {} (root indices {:?})", d.vertices.len(), d.vertices);
            for e in &d.edges {
                let _ = writeln!(s, "edge {} - {} labels ({}, {})", e.source, e.target, e.labels.0 .0, e.labels.1 .0);
            }
            let _ = writeln!(s, "cartan matrix: {}", matrix_text(&d.cartan_matrix));
            match d.automorphism_count {
                Some(n) => {
                    let _ = writeln!(s, "diagram automorphisms: {n}");
                }
                None => {
                    let _ = writeln!(s, "diagram automorphisms: not determined (datum is not semisimple)");
                }
            }
            for p in &d.non_lifting {
                let _ = writeln!(s, "symmetry {p:?} does not lift to the datum");
            }
        }
        Report::Classify(c) => {
            let _ = writeln!(s, "Z(G) = {}", c.center.description);
            let _ = writeln!(s, "|Gamma| = {}, generators {:?}", c.gamma_order, c.gamma_generators);
            for a in &c.action {
                let _ = writeln!(
                    s,
                    "Ad({}) = {}  simple roots -> {:?}  on X*/ZR: {}",
                    a.gamma_element,
                    matrix_text(&a.ad),
                    a.simple_root_permutation,
                    matrix_text(&a.character_map)
                );
            }
            let _ = writeln!(s, "H2(Gamma, Z(G)) = {}  ({} classes)", factors(&c.h2_invariant_factors), c.class_count.0);
            let _ = writeln!(
                s,
                "computed in Z(G)[{}] = {}, stable from k = {}",
                c.coefficient_level.0,
                factors(&c.coefficient_moduli),
                c.k_used
            );
            for t in &c.tower {
                let _ = writeln!(
                    s,
                    "  k = {}: H2 at level {} = {}, image J = {}, H2 iso: {}, J iso: {}",
                    t.k,
                    t.level.0,
                    factors(&t.h2),
                    factors(&t.image),
                    t.comparison_is_isomorphism,
                    t.image_comparison_is_isomorphism.map_or("-".to_string(), |b| b.to_string())
                );
            }
            let _ = writeln!(s, "eckmann check: {}", c.eckmann_check);
            for (i, class) in c.classes.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "class {i} [{}]{}",
                    join(&class.coordinates),
                    if class.split { " (split)" } else { "" }
                );
                for r in &class.relations {
                    let _ = writeln!(s, "  {r}");
                }
            }
        }
        Report::Check(c) => {
            let _ = writeln!(s, "seed {}", c.seed);
            for r in &c.results {
                let mark = if r.passed { "ok  " } else { "FAIL" };
                if r.detail.is_empty() {
                    let _ = writeln!(s, "{mark} {}", r.name);
                } else {
                    let _ = writeln!(s, "{mark} {} ({})", r.name, r.detail);
                }
            }
        }
    }
    s
}

/// Parse, validate, run and render; returns the output text and exit code.
pub fn execute(command: Command, text: &str, format: Option<Format>, overrides: &Options, seed: u64) -> (String, i32) {
    let parsed = parse_problem_str(text);
    let fmt = format
        .or_else(|| parsed.as_ref().ok().and_then(|p| p.options.format))
        .unwrap_or(Format::Text);
    let outcome = parsed.and_then(|mut file| {
        if overrides.max_k.is_some() {
            file.options.max_k = overrides.max_k;
        }
        if overrides.budget.is_some() {
            file.options.budget = overrides.budget;
        }
        let problem = file.validate()?;
        run(command, &problem, seed)
    });
    match outcome {
        Ok(report) => {
            let code = match &report {
                Report::Check(c) if !c.all_passed() => 3,
                _ => 0,
            };
            let out = match fmt {
                Format::Json => render_json(&report),
                Format::Text => render_text(&report),
            };
            (out, code)
        }
        Err(e) => {
            let out = match fmt {
                Format::Json => render_error_json(&e),
                Format::Text => format!("{e}\n"),
            };
            (out, e.exit_code())
        }
    }
}
