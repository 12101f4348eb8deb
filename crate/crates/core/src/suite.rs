//! The verification suite: every reproduced claim as a named [`Check`],
//! grouped by selector.
//!
//! Algebras come from an [`Algebras`] store, which reads canonical structure
//! tables from a cache directory when present. A corrupted table therefore
//! shows up as failing checks rather than going unnoticed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::abelext::{
    classification_text, classify_lifts_in, scan_invariant_abelian, AbelError, AbelianCatalog, Evidence, LiftClass,
    Representatives,
};
use crate::branch::{branch_with_linkage, indecomposability_criterion, BranchError, BranchingReport};
use crate::checks::{all_passed, Check};
use crate::chevalley::{parse_structure_table, AlgebraElement, ChevalleyError, LieAlgebra};
use crate::config::parse_weight;
use crate::decomp::{decompose_under, linear_equivalence_witness, DecompError, IsotypicDecomposition};
use crate::embed::{generated_submodule, EmbedError, EmbeddingMap, Variant};
use crate::exactla::{int, EchelonBasis};
use crate::hwmod::{adjoint_module, construct_irrep, ModuleError, WeightModule};
use crate::rootsys::{RootSystemError, SimpleType, Weight};

/// Sampled Jacobi triples for algebras too large for the exhaustive sweep.
pub const JACOBI_SAMPLES: u64 = 100_000;
pub const JACOBI_SEED: u64 = 0x5eed;
/// Largest dimension swept exhaustively.
pub const JACOBI_EXHAUSTIVE_MAX_DIM: usize = 133;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown selector {0:?}; expected one of {1}")]
    UnknownSelector(String, String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Table {
        path: PathBuf,
        #[source]
        source: ChevalleyError,
    },
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Abel(#[from] AbelError),
    #[error(transparent)]
    Branch(#[from] BranchError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Selector {
    Serre,
    Dimensions,
    Restrictions,
    Adjoint,
    Abelian,
    Catalogs,
    Classification,
    Tables,
    Branching,
    All,
}

impl Selector {
    pub const GROUPS: [Selector; 9] = [
        Selector::Serre,
        Selector::Dimensions,
        Selector::Restrictions,
        Selector::Adjoint,
        Selector::Abelian,
        Selector::Catalogs,
        Selector::Classification,
        Selector::Tables,
        Selector::Branching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Selector::Serre => "serre",
            Selector::Dimensions => "dimensions",
            Selector::Restrictions => "restrictions",
            Selector::Adjoint => "adjoint",
            Selector::Abelian => "abelian",
            Selector::Catalogs => "catalogs",
            Selector::Classification => "classification",
            Selector::Tables => "tables",
            Selector::Branching => "branching",
            Selector::All => "all",
        }
    }

    fn groups(self) -> Vec<Selector> {
        match self {
            Selector::All => Self::GROUPS.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selector {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        Self::GROUPS
            .iter()
            .chain(std::iter::once(&Selector::All))
            .find(|g| g.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Self::GROUPS.iter().map(|g| g.name()).chain(["all"]).collect();
                SuiteError::UnknownSelector(s.to_string(), names.join(", "))
            })
    }
}

/// Shared store of built or loaded algebras.
pub struct Algebras {
    cache_dir: Option<PathBuf>,
    memo: Mutex<BTreeMap<SimpleType, Arc<LieAlgebra>>>,
}

impl Algebras {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Self {
            cache_dir,
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn table_path(&self, t: SimpleType) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{t}.table")))
    }

    /// Loads `t` from the cache directory, or builds it and writes the table
    /// there.
    pub fn get(&self, t: SimpleType) -> Result<Arc<LieAlgebra>, SuiteError> {
        if let Some(g) = self.memo.lock().expect("algebra store poisoned").get(&t) {
            return Ok(g.clone());
        }
        let g = Arc::new(match self.table_path(t) {
            Some(path) if path.exists() => load_table(&path, t)?,
            Some(path) => {
                let g = LieAlgebra::build_type(t);
                write_table(&path, &g)?;
                g
            }
            None => LieAlgebra::build_type(t),
        });
        self.memo.lock().expect("algebra store poisoned").insert(t, g.clone());
        Ok(g)
    }
}

fn io_error(path: &Path, e: impl fmt::Display) -> SuiteError {
    SuiteError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

pub fn load_table(path: &Path, expected: SimpleType) -> Result<LieAlgebra, SuiteError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let table = parse_structure_table(&text).map_err(|source| SuiteError::Table {
        path: path.to_path_buf(),
        source,
    })?;
    if table.simple_type != expected {
        return Err(SuiteError::Table {
            path: path.to_path_buf(),
            source: ChevalleyError::Table(format!("holds {}, expected {expected}", table.simple_type)),
        });
    }
    LieAlgebra::from_table(&table).map_err(|source| SuiteError::Table {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_table(path: &Path, g: &LieAlgebra) -> Result<(), SuiteError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    std::fs::write(path, g.structure_table_text()).map_err(|e| io_error(path, e))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub selector: Selector,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
    /// Text reproductions (classification tables, catalogs), keyed by name.
    pub artifacts: BTreeMap<String, String>,
    /// Wall-clock time per group. Kept out of the JSON so reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub timings: Vec<(Selector, Duration)>,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark}  {:<48} {}\n", c.id, c.claim));
            if !c.passed || !c.detail.is_empty() {
                out.push_str(&format!("      {}\n", c.detail));
            }
        }
        out.push_str(&format!(
            "{} of {} checks passed ({})\n",
            self.total - self.failed,
            self.total,
            self.selector
        ));
        out
    }
}

#[derive(Default)]
struct Group {
    checks: Vec<Check>,
    artifacts: BTreeMap<String, String>,
}

impl Group {
    fn check(&mut self, id: impl Into<String>, claim: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(id, claim, passed, detail));
    }
}

/// Runs every group the selector covers. Errors inside a group become a
/// failing check, so one broken table does not hide the rest of the report.
pub fn run(selector: Selector, algebras: &Algebras) -> SuiteReport {
    let mut checks = Vec::new();
    let mut artifacts = BTreeMap::new();
    let mut timings = Vec::new();
    for group in selector.groups() {
        let start = Instant::now();
        let mut g = Group::default();
        let outcome = catch_unwind(AssertUnwindSafe(|| run_group(group, algebras, &mut g)));
        match outcome {
            Ok(Ok(())) => {}
            Ok(Err(e)) => g.check(format!("{group}.error"), "group ran to completion", false, e.to_string()),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                g.check(format!("{group}.error"), "group ran to completion", false, msg);
            }
        }
        checks.extend(g.checks);
        artifacts.extend(g.artifacts);
        timings.push((group, start.elapsed()));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    SuiteReport {
        selector,
        passed: all_passed(&checks),
        total: checks.len(),
        failed,
        checks,
        artifacts,
        timings,
    }
}

fn run_group(s: Selector, a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    match s {
        Selector::Serre => serre(a, g),
        Selector::Dimensions => dimensions(a, g),
        Selector::Restrictions => restrictions(a, g),
        Selector::Adjoint => adjoint(a, g),
        Selector::Abelian => abelian(a, g),
        Selector::Catalogs => catalogs(a, g),
        Selector::Classification => classification(a, g),
        Selector::Tables => tables(a, g),
        Selector::Branching => branching(a, g),
        Selector::All => unreachable!("expanded by groups()"),
    }
}

pub fn built_types() -> Vec<SimpleType> {
    let mut v: Vec<SimpleType> = (5..=7).map(|n| SimpleType::d(n).expect("valid D rank")).collect();
    v.extend((6..=8).map(|r| SimpleType::e(r).expect("valid E rank")));
    v
}

fn e(r: usize) -> SimpleType {
    SimpleType::e(r).expect("valid E rank")
}

fn lower(t: SimpleType) -> String {
    t.to_string().to_lowercase()
}

fn w(rank: usize, s: &str) -> Weight {
    parse_weight(s, rank).expect("static weight")
}

fn embedding(a: &Algebras, r: usize, v: Variant) -> Result<EmbeddingMap, SuiteError> {
    Ok(EmbeddingMap::with_variant(a.get(e(r))?, v)?)
}

fn multiset_of(d: &IsotypicDecomposition) -> BTreeMap<Weight, usize> {
    d.multiset().into_iter().collect()
}

fn expected_multiset(rank: usize, items: &[(&str, usize)]) -> BTreeMap<Weight, usize> {
    items.iter().map(|(s, k)| (w(rank, s), *k)).collect()
}

fn multiset_label(m: &BTreeMap<Weight, usize>) -> String {
    m.iter()
        .map(|(w, k)| format!("{}:{k}", w.label()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn serre(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    for t in built_types() {
        let alg = a.get(t)?;
        let id = lower(t);
        let s = alg.verify_serre();
        g.check(
            format!("serre.{id}.relations"),
            format!("{t} generators satisfy the Chevalley-Serre relations exactly"),
            s.passed(),
            format!("{} relations, {} failures {:?}", s.relations_checked, s.failures.len(), s.failures.first()),
        );
        let anti = alg.antisymmetry_failures();
        g.check(
            format!("serre.{id}.antisymmetry"),
            format!("{t} bracket is antisymmetric"),
            anti.is_empty(),
            format!("{} failing pairs", anti.len()),
        );
        let (j, how) = if alg.dim() <= JACOBI_EXHAUSTIVE_MAX_DIM {
            (alg.jacobi_exhaustive(), "all triples")
        } else {
            (alg.jacobi_sampled(JACOBI_SAMPLES, JACOBI_SEED), "random triples")
        };
        g.check(
            format!("serre.{id}.jacobi"),
            format!("{t} satisfies the Jacobi identity ({how})"),
            j.passed() && (alg.dim() <= JACOBI_EXHAUSTIVE_MAX_DIM || j.triples_checked >= JACOBI_SAMPLES),
            format!("{} triples, failures {:?}", j.triples_checked, j.failures),
        );
        if alg.dim() > JACOBI_EXHAUSTIVE_MAX_DIM {
            let jg = alg.jacobi_with_generators();
            g.check(
                format!("serre.{id}.jacobi_generators"),
                format!("{t} satisfies the Jacobi identity on every triple containing a generator"),
                jg.passed(),
                format!("{} triples, failures {:?}", jg.triples_checked, jg.failures),
            );
        }
    }
    Ok(())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn module_checks(id: &str, what: &str, m: &WeightModule, expected_dim: usize, g: &mut Group) {
    let rel = m.verify_relations();
    let weyl = m.weyl_symmetry_violations();
    g.check(
        format!("dimensions.module.{id}"),
        format!("{what} has dimension {expected_dim}, satisfies the relations and has Weyl-symmetric weights"),
        m.dim() == expected_dim && rel.passed() && weyl.is_empty(),
        format!("dim {}, {} relation failures, {} asymmetric weights", m.dim(), rel.failures.len(), weyl.len()),
    );
}

fn dimensions(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    for t in built_types() {
        let alg = a.get(t)?;
        let r = t.rank();
        let expected = match (t.to_string().as_str(), r) {
            ("E6", _) => 78,
            ("E7", _) => 133,
            ("E8", _) => 248,
            (_, n) => 2 * n * n - n,
        };
        let expected_pos = (expected - r) / 2;
        g.check(
            format!("dimensions.{}.algebra", lower(t)),
            format!("dim {t} = {expected}"),
            alg.dim() == expected && alg.num_positive_roots() == expected_pos,
            format!("dim {}, {} positive roots", alg.dim(), alg.num_positive_roots()),
        );
    }
    for n in 5..=7usize {
        let t = SimpleType::d(n)?;
        let rs = a.get(t)?.root_system().clone();
        let mut dims = Vec::new();
        let mut ok = true;
        for m in 1..=n {
            let expected = if m < n - 1 {
                binomial(2 * n as u64, m as u64)
            } else {
                1 << (n - 1)
            };
            let got = rs.weyl_dim(&Weight::fundamental(n, m))?;
            ok &= got == BigInt::from(expected);
            dims.push(format!("λ{m}:{got}"));
        }
        g.check(
            format!("dimensions.{}.fundamental", lower(t)),
            format!("fundamental {t} modules have dimension C(2n,m), or 2^(n-1) at the spin nodes"),
            ok,
            dims.join(" "),
        );
    }
    let modules: [(SimpleType, &str, usize); 9] = [
        (SimpleType::d(5)?, "λ1", 10),
        (SimpleType::d(5)?, "λ4", 16),
        (SimpleType::d(5)?, "λ5", 16),
        (SimpleType::d(6)?, "λ5", 32),
        (SimpleType::d(6)?, "λ6", 32),
        (SimpleType::d(7)?, "λ1", 14),
        (e(6), "λ6", 27),
        (e(6), "λ1", 27),
        (e(7), "λ7", 56),
    ];
    for (t, hw, dim) in modules {
        let m = construct_irrep(a.get(t)?, &w(t.rank(), hw))?;
        let id = format!("{}.{}", lower(t), hw.replace('λ', "l"));
        module_checks(&id, &format!("V_{t}({hw})"), &m, dim, g);
    }
    for r in 6..=8 {
        let alg = a.get(e(r))?;
        let m = adjoint_module(alg.clone());
        module_checks(&format!("{}.adjoint", lower(e(r))), &format!("adjoint {}", e(r)), &m, alg.dim(), g);
    }
    Ok(())
}

fn decomposition_check(
    g: &mut Group,
    id: String,
    claim: String,
    d: &IsotypicDecomposition,
    expected: &BTreeMap<Weight, usize>,
    total: usize,
) {
    let got = multiset_of(d);
    let sum: usize = d.dimension_terms().iter().sum();
    g.check(
        id,
        claim,
        &got == expected && sum == total && d.total_dim == total,
        format!("{} = {}", d.notation(), d.dimension_terms().iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")),
    );
}

fn restrictions(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    let cases: [(usize, &str, usize, Vec<(&str, usize)>, Vec<(&str, usize)>); 3] = [
        (6, "λ6", 27, vec![("0", 1), ("λ1", 1), ("λ5", 1)], vec![("0", 1), ("λ1", 1), ("λ4", 1)]),
        (7, "λ7", 56, vec![("λ1", 2), ("λ6", 1)], vec![("λ1", 2), ("λ5", 1)]),
        (
            8,
            "λ8",
            248,
            vec![("λ2", 1), ("λ1", 2), ("λ6", 1), ("λ7", 1), ("0", 1)],
            vec![("λ2", 1), ("λ1", 2), ("λ6", 1), ("λ7", 1), ("0", 1)],
        ),
    ];
    for (r, hw, dim, nat, tw) in cases {
        let t = e(r);
        let alg = a.get(t)?;
        let m = construct_irrep(alg.clone(), &w(r, hw))?;
        let phi = EmbeddingMap::with_variant(alg.clone(), Variant::Natural)?;
        let rho = EmbeddingMap::with_variant(alg, Variant::Twisted)?;
        for (emb, exp, v) in [(&phi, &nat, "natural"), (&rho, &tw, "twisted")] {
            let d = decompose_under(&m, emb)?;
            let expected = expected_multiset(r - 1, exp);
            decomposition_check(
                g,
                format!("restrictions.{}.{v}", lower(t)),
                format!("V_{t}({hw}) under the {v} D{} is {}", r - 1, multiset_label(&expected)),
                &d,
                &expected,
                dim,
            );
        }
        let same = linear_equivalence_witness(&m, &phi, &rho)?;
        let expect_same = r == 8;
        g.check(
            format!("restrictions.{}.linear_equivalence", lower(t)),
            if expect_same {
                format!("natural and twisted D{} in {t} restrict V({hw}) identically", r - 1)
            } else {
                format!("natural and twisted D{} in {t} are not linearly equivalent", r - 1)
            },
            same == expect_same,
            format!("restrictions equal: {same}"),
        );
    }
    Ok(())
}

fn span_of(dim: usize, v: &[AlgebraElement]) -> EchelonBasis {
    let mut s = EchelonBasis::new(dim);
    for e in v {
        s.insert(e.coeffs());
    }
    s
}

fn same_span(dim: usize, a: &[AlgebraElement], b: &[AlgebraElement]) -> bool {
    let (sa, sb) = (span_of(dim, a), span_of(dim, b));
    sa.len() == sb.len() && b.iter().all(|e| sa.contains(e.coeffs()))
}

fn adjoint(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    let cases: [(usize, Variant, Vec<(&str, usize)>, Vec<usize>); 5] = [
        (6, Variant::Natural, vec![("λ2", 1), ("λ4", 1), ("λ5", 1), ("0", 1)], vec![45, 16, 16, 1]),
        (6, Variant::Twisted, vec![("λ2", 1), ("λ4", 1), ("λ5", 1), ("0", 1)], vec![45, 16, 16, 1]),
        (7, Variant::Natural, vec![("λ2", 1), ("λ5", 2), ("0", 3)], vec![66, 32, 32, 1, 1, 1]),
        (7, Variant::Twisted, vec![("λ2", 1), ("λ6", 2), ("0", 3)], vec![66, 32, 32, 1, 1, 1]),
        (
            8,
            Variant::Natural,
            vec![("λ2", 1), ("λ1", 2), ("λ6", 1), ("λ7", 1), ("0", 1)],
            vec![91, 14, 64, 64, 14, 1],
        ),
    ];
    for (r, v, exp, terms) in cases {
        let t = e(r);
        let emb = embedding(a, r, v)?;
        let alg = emb.target().clone();
        let id = format!("adjoint.{}.{v}", lower(t));
        let hom = emb.verify_homomorphism();
        g.check(
            format!("{id}.homomorphism"),
            format!("{} is a homomorphism D{} → {t}", emb.descriptor(), r - 1),
            hom.passed(),
            format!("{} relations, failures {:?}", hom.relations_checked, hom.failures.first()),
        );
        let m = adjoint_module(alg.clone());
        let d = decompose_under(&m, &emb)?;
        let expected = expected_multiset(r - 1, &exp);
        decomposition_check(
            g,
            id.clone(),
            format!("{t} under the {v} D{} is {}", r - 1, multiset_label(&expected)),
            &d,
            &expected,
            alg.dim(),
        );
        let mut got_terms = d.dimension_terms();
        let mut want = terms.clone();
        got_terms.sort_unstable();
        want.sort_unstable();
        g.check(
            format!("{id}.dimension_sum"),
            format!(
                "{} = {}",
                alg.dim(),
                terms.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
            ),
            got_terms == want && terms.iter().sum::<usize>() == alg.dim(),
            format!("{got_terms:?}"),
        );
        let xp = alg.named_elements()?.xp;
        let generated = generated_submodule(&alg, &xp, &emb);
        g.check(
            format!("{id}.image_is_xprime"),
            "the image of D_n is the submodule generated by X'",
            same_span(alg.dim(), &generated, emb.image_basis()),
            format!("dim [X'] = {}, dim image = {}", generated.len(), emb.image_basis().len()),
        );
    }
    Ok(())
}

fn entry_check(g: &mut Group, id: String, cat: &AbelianCatalog, subspace: &str, claim: &str, ok: impl Fn(&crate::abelext::CatalogEntry) -> bool) {
    let entry = cat.entry(subspace);
    g.check(
        id,
        claim,
        entry.is_some_and(&ok),
        entry.map_or_else(
            || format!("no entry {subspace}"),
            |e| format!("{} dim {} abelian {} {:?}", e.subspace, e.dim, e.abelian, e.evidence),
        ),
    );
}

fn is_bound(e: &crate::abelext::CatalogEntry, dim: usize, bound: usize) -> bool {
    !e.abelian && matches!(&e.evidence, Evidence::DimensionBound { dim: d, bound: b, .. } if *d == dim && *b == bound)
}

fn witness_is(e: &crate::abelext::CatalogEntry, bracket: &str) -> bool {
    !e.abelian && matches!(&e.evidence, Evidence::Witness(w) if w.bracket == bracket)
}

fn bracket_is(alg: &LieAlgebra, a: &AlgebraElement, b: &AlgebraElement, expected: &AlgebraElement) -> bool {
    &alg.br(a, b) == expected
}

fn abelian(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    // E8.
    for v in [Variant::Natural, Variant::Twisted] {
        let emb = embedding(a, 8, v)?;
        let cat = scan_invariant_abelian(&emb)?;
        let p = format!("abelian.e8.{v}");
        for s in ["[X''']", "[Y']"] {
            entry_check(g, format!("{p}.{}", slug(s)), &cat, s, &format!("{s} is a 14-dimensional abelian subspace"), |e| {
                e.abelian && e.dim == 14
            });
        }
        for s in ["[Y1]", "[X'']"] {
            entry_check(g, format!("{p}.{}", slug(s)), &cat, s, &format!("{s} has dimension 64 > 36"), |e| {
                is_bound(e, 64, 36)
            });
        }
        entry_check(
            g,
            format!("{p}.sum_witness"),
            &cat,
            "[Y'] ⊕ [X''']",
            "[Y'] ⊕ [X'''] is not abelian; the witness bracket is ±X'",
            |e| witness_is(e, "-X'") || witness_is(e, "X'"),
        );
        entry_check(
            g,
            format!("{p}.mixture_identity"),
            &cat,
            "[αY' + βX'''], αβ ≠ 0",
            "[p, [Y8, p]] = -2αβ X' for p = αY' + βX''' as a polynomial identity",
            |e| {
                !e.abelian
                    && matches!(&e.evidence, Evidence::Identity { coefficient, result, .. }
                        if coefficient == "-2*α*β" && result == "X'")
            },
        );
    }
    // E7.
    for v in [Variant::Natural, Variant::Twisted] {
        let emb = embedding(a, 7, v)?;
        let cat = scan_invariant_abelian(&emb)?;
        let p = format!("abelian.e7.{v}");
        for s in ["[X'']", "[Y1]"] {
            entry_check(g, format!("{p}.{}", slug(s)), &cat, s, &format!("{s} has dimension 32 > 27"), |e| {
                is_bound(e, 32, 27)
            });
        }
        for (s, b) in [
            ("[Y'] ⊕ [X''']", "-H"),
            ("[Y'] ⊕ [H]", "2*Y'"),
            ("[X'''] ⊕ [H]", "-2*X'''"),
        ] {
            entry_check(g, format!("{p}.{}", slug(s)), &cat, s, &format!("{s} is not abelian: bracket {b}"), |e| {
                witness_is(e, b)
            });
        }
        entry_check(
            g,
            format!("{p}.weight_zero_family"),
            &cat,
            "[αY' + βX''' + γH]",
            "every line αY' + βX''' + γH is abelian",
            |e| e.abelian && e.dim == 1,
        );
    }
    // E6.
    for v in [Variant::Natural, Variant::Twisted] {
        let emb = embedding(a, 6, v)?;
        let cat = scan_invariant_abelian(&emb)?;
        let p = format!("abelian.e6.{v}");
        for s in ["[Y1]", "[X'']"] {
            entry_check(g, format!("{p}.{}", slug(s)), &cat, s, &format!("{s} is a 16-dimensional abelian subspace"), |e| {
                e.abelian && e.dim == 16
            });
        }
        let sum = if v == Variant::Natural { "[Y1] ⊕ [X'']" } else { "[X''] ⊕ [Y1]" };
        entry_check(g, format!("{p}.sum"), &cat, sum, "the sum of the two 16-dimensional subspaces is not abelian", |e| {
            !e.abelian
        });
    }
    sign_audit(a, g)
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            'X' | 'Y' | 'H' => out.push(c.to_ascii_lowercase()),
            '\'' => out.push('p'),
            '⊕' => out.push_str("_plus_"),
            c if c.is_ascii_digit() => out.push(c),
            _ => {}
        }
    }
    out
}

/// Brackets of the named elements, exactly as the literature prints them.
fn sign_audit(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    let e8 = a.get(e(8))?;
    let n8 = e8.named_elements()?;
    let (xpp, xppp, yp, h) = (
        n8.xpp.clone(),
        n8.xppp.clone().expect("E8 defines X'''"),
        n8.yp.clone().expect("E8 defines Y'"),
        n8.h.clone(),
    );
    for (id, claim, ok) in [
        ("h_xpp", "[H, X''] = X'' in E8", bracket_is(&e8, &h, &xpp, &xpp)),
        ("h_xppp", "[H, X'''] = 2X''' in E8", bracket_is(&e8, &h, &xppp, &xppp.scale(&int(2)))),
        ("h_yp", "[H, Y'] = -2Y' in E8", bracket_is(&e8, &h, &yp, &yp.scale(&int(-2)))),
    ] {
        g.check(format!("abelian.sign.e8.{id}"), claim, ok, "");
    }
    // A concrete instance of the mixture identity, independent of the
    // symbolic scan: alpha = 2, beta = 3.
    let p = xppp.scale(&int(2)).add(&yp.scale(&int(3)));
    let lhs = e8.br(&p, &e8.br(&e8.y(8), &p));
    g.check(
        "abelian.sign.e8.mixture_instance",
        "[2X''' + 3Y', [Y8, 2X''' + 3Y']] = -12 X'",
        lhs == n8.xp.scale(&int(-12)),
        e8.format_element(&lhs),
    );
    let e7 = a.get(e(7))?;
    let n7 = e7.named_elements()?;
    let (x3, y1p) = (n7.xppp.clone().expect("E7 defines X'''"), n7.yp.clone().expect("E7 defines Y'"));
    g.check("abelian.sign.e7.xppp_yp", "[X''', Y'] = H in E7", bracket_is(&e7, &x3, &y1p, &n7.h), "");
    Ok(())
}

fn catalogs(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    let expected: [(usize, Variant, Vec<(&str, &str, usize)>); 6] = [
        (8, Variant::Natural, vec![("[Y']", "λ1", 14), ("[X''']", "λ1", 14), ("[H]", "0", 1)]),
        (8, Variant::Twisted, vec![("[Y']", "λ1", 14), ("[X''']", "λ1", 14), ("[H]", "0", 1)]),
        (7, Variant::Natural, vec![("[αY' + βX''' + γH]", "0", 1)]),
        (7, Variant::Twisted, vec![("[αY' + βX''' + γH]", "0", 1)]),
        (6, Variant::Natural, vec![("[Y1]", "λ4", 16), ("[X'']", "λ5", 16), ("[H]", "0", 1)]),
        (6, Variant::Twisted, vec![("[X'']", "λ4", 16), ("[Y1]", "λ5", 16), ("[H]", "0", 1)]),
    ];
    let mut by_variant: BTreeMap<(usize, bool), AbelianCatalog> = BTreeMap::new();
    for (r, v, exp) in expected {
        let t = e(r);
        let emb = embedding(a, r, v)?;
        let cat = scan_invariant_abelian(&emb)?;
        let id = format!("catalogs.{}.{v}", lower(t));
        let got: BTreeSet<(String, String, usize)> = cat
            .entries
            .iter()
            .filter(|e| e.abelian)
            .map(|e| (e.subspace.clone(), e.weights.join(","), e.dim))
            .collect();
        let want: BTreeSet<(String, String, usize)> =
            exp.iter().map(|(s, wt, d)| (s.to_string(), wt.to_string(), *d)).collect();
        g.check(
            id.clone(),
            format!(
                "the invariant abelian subspaces for the {v} D{} in {t} are exactly {}",
                r - 1,
                exp.iter().map(|x| x.0).collect::<Vec<_>>().join(", ")
            ),
            got == want,
            format!("{got:?}"),
        );
        let bound_ok = cat.entries.iter().filter(|e| e.abelian).all(|e| e.dim <= cat.bound);
        let evidence_ok = cat
            .entries
            .iter()
            .filter(|e| !e.abelian)
            .all(|e| !matches!(e.evidence, Evidence::BracketsVanish { .. }));
        g.check(
            format!("{id}.evidence"),
            "abelian entries respect the dimension bound and every other entry carries a witness",
            bound_ok && evidence_ok,
            format!("bound {}, {} entries", cat.bound, cat.entries.len()),
        );
        g.artifacts.insert(format!("catalog.{}.{v}", lower(t)), cat.to_text());
        by_variant.insert((r, v == Variant::Twisted), cat);
    }
    for r in [6, 7, 8] {
        let (p, q) = (format!("λ{}", r - 2), format!("λ{}", r - 1));
        let swap = |l: &str| -> String {
            if l == p {
                q.clone()
            } else if l == q {
                p.clone()
            } else {
                l.to_string()
            }
        };
        let shape = |c: &AbelianCatalog, relabel: bool| -> Vec<(Vec<String>, usize, bool)> {
            let mut v: Vec<(Vec<String>, usize, bool)> = c
                .entries
                .iter()
                .map(|e| {
                    let mut ws: Vec<String> =
                        e.weights.iter().map(|l| if relabel { swap(l) } else { l.clone() }).collect();
                    ws.sort();
                    (ws, e.dim, e.abelian)
                })
                .collect();
            v.sort();
            v
        };
        let (nat, tw) = (&by_variant[&(r, false)], &by_variant[&(r, true)]);
        g.check(
            format!("catalogs.{}.twist_relabels", lower(e(r))),
            format!("the twisted catalog is the natural one with {p} and {q} exchanged"),
            shape(nat, true) == shape(tw, false),
            "",
        );
    }
    Ok(())
}

fn classification(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    for r in [6, 7, 8] {
        let c = classify_lifts_in(a.get(e(r))?)?;
        g.checks.extend(c.checks);
    }
    Ok(())
}

fn finite(lifts: &[&str]) -> Representatives {
    Representatives::Finite {
        lifts: lifts.iter().map(|s| s.to_string()).collect(),
    }
}

fn tables(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    for r in [6, 7, 8] {
        let t = e(r);
        let c = classify_lifts_in(a.get(t)?)?;
        let expect: Vec<(&str, usize, Box<dyn Fn(&Representatives) -> bool>)> = match r {
            8 => vec![
                ("D7 ⋉ V(λ1)", 14, Box::new(|x: &Representatives| x == &finite(&["φ̃7^{λ1,1}", "φ̃7^{λ1',1}"]))),
                (
                    "D7 ⋉ V(0)",
                    1,
                    Box::new(|x: &Representatives| {
                        matches!(x, Representatives::Continuum { families, .. } if families == &["φ̃7^{0,α}"])
                    }),
                ),
            ],
            7 => vec![(
                "D6 ⋉ V(0)",
                1,
                Box::new(|x: &Representatives| {
                    matches!(x, Representatives::Orbits { families, invariant, .. }
                        if families == &["φ̃6^{0,(α,β,γ)}", "ϱ̃6^{0,(α,β,γ)}"] && invariant == "γ² + αβ")
                }),
            )],
            _ => vec![
                ("D5 ⋉ V(λ4)", 16, Box::new(|x: &Representatives| x == &finite(&["φ̃5^{λ4,1}", "ϱ̃5^{λ4,1}"]))),
                ("D5 ⋉ V(λ5)", 16, Box::new(|x: &Representatives| x == &finite(&["φ̃5^{λ5,1}", "ϱ̃5^{λ5,1}"]))),
                (
                    "D5 ⋉ V(0)",
                    1,
                    Box::new(|x: &Representatives| {
                        matches!(x, Representatives::Continuum { families, .. }
                            if families == &["φ̃5^{0,α}", "ϱ̃5^{0,α}"])
                    }),
                ),
            ],
        };
        let rows_ok = c.classes.len() == expect.len()
            && c.classes.iter().zip(&expect).all(|(cls, (ext, dim, rep)): (&LiftClass, _)| {
                cls.extension == *ext && cls.radical_dim == *dim && rep(&cls.representatives)
            });
        g.check(
            format!("tables.{}", lower(t)),
            format!("abelian extensions of D{} embedded in {t}, up to equivalence, match the expected classification", r - 1),
            rows_ok,
            c.classes
                .iter()
                .map(|c| {
                    let reps = serde_json::to_string(&c.representatives).expect("serializable");
                    format!("{} ({}): {reps}", c.extension, c.radical_dim)
                })
                .collect::<Vec<_>>()
                .join("; "),
        );
        g.check(
            format!("tables.{}.certificates", lower(t)),
            format!("every distinctness and equivalence certificate behind the {t} table holds"),
            c.passed(),
            format!("{} certificates", c.checks.len()),
        );
        g.artifacts.insert(format!("table.{}", lower(t)), classification_text(&c));
    }
    Ok(())
}

fn lift_of(emb: &EmbeddingMap, u: AlgebraElement, desc: &str) -> Result<EmbeddingMap, SuiteError> {
    let weight = emb
        .highest_weight_of(&u)
        .ok_or_else(|| EmbedError::NotHighestWeight(Weight::zero(emb.source().rank())))?;
    Ok(emb.lift(&weight, u, desc)?)
}

fn report_sanity(g: &mut Group, id: &str, rep: &BranchingReport) {
    g.check(
        format!("{id}.radical_commutes"),
        "radical action matrices commute pairwise",
        rep.radical_actions_commute,
        rep.module.clone(),
    );
    g.check(
        format!("{id}.weight_compatible"),
        "every linkage edge shifts weights by a radical weight",
        rep.linkage_weight_compatible,
        format!("{} edges", rep.linkage_edges.len()),
    );
}

fn sorted_blocks(rep: &BranchingReport) -> Vec<Vec<String>> {
    let mut b: Vec<Vec<String>> = rep
        .block_weights()
        .into_iter()
        .map(|blk| {
            let mut v: Vec<String> = blk.iter().map(Weight::label).collect();
            v.sort();
            v
        })
        .collect();
    b.sort();
    b
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn branching(a: &Algebras, g: &mut Group) -> Result<(), SuiteError> {
    // Sixteen-dimensional radicals in E6: criterion holds, and the minuscule
    // module stays in one block.
    let e6 = a.get(e(6))?;
    let n6 = e6.named_elements()?;
    let v27 = construct_irrep(e6.clone(), &w(6, "λ6"))?;
    for v in [Variant::Natural, Variant::Twisted] {
        let emb = EmbeddingMap::with_variant(e6.clone(), v)?;
        for (u, name) in [(n6.xpp.clone(), "X''"), (e6.y(1), "Y1")] {
            let lift = lift_of(&emb, u, name)?;
            let id = format!("branching.e6.{v}.{}", slug(name));
            let crit = indecomposability_criterion(&lift);
            g.check(
                format!("{id}.criterion"),
                format!("{} contains all positive or all negative root vectors", lift.descriptor()),
                crit,
                "",
            );
            let rep = branch_with_linkage(&v27, &lift)?;
            g.check(
                format!("{id}.minuscule_single_block"),
                format!("V_E6(λ6) under {} is one block", lift.descriptor()),
                rep.blocks.len() == 1,
                rep.block_notation.clone(),
            );
            report_sanity(g, &id, &rep);
        }
        let cartan = emb.lift(&Weight::zero(5), n6.h.clone(), "H")?;
        let id = format!("branching.e6.{v}.cartan");
        g.check(
            format!("{id}.criterion"),
            format!("{} fails the root-vector criterion", cartan.descriptor()),
            !indecomposability_criterion(&cartan),
            "",
        );
        let rep = branch_with_linkage(&adjoint_module(e6.clone()), &cartan)?;
        g.check(
            format!("{id}.adjoint_singletons"),
            "a Cartan radical does not link any constituents of the E6 adjoint module",
            rep.linkage_edges.is_empty() && rep.blocks.len() == 4,
            rep.block_notation.clone(),
        );
        report_sanity(g, &id, &rep);
    }

    // E8 adjoint, which is V(λ8).
    let e8 = a.get(e(8))?;
    let n8 = e8.named_elements()?;
    let highest = e8.root_system().root_to_weight(e8.root_system().highest_root());
    g.check(
        "branching.e8.adjoint_is_l8",
        "the E8 adjoint module has highest weight λ8",
        highest == Weight::fundamental(8, 8),
        highest.label(),
    );
    let phi7 = EmbeddingMap::with_variant(e8.clone(), Variant::Natural)?;
    let adj8 = adjoint_module(e8.clone());
    for (u, name, label) in [
        (n8.xppp.clone().expect("E8 defines X'''"), "X'''", "l1"),
        (n8.yp.clone().expect("E8 defines Y'"), "Y'", "l1prime"),
    ] {
        let lift = phi7.lift(&Weight::fundamental(7, 1), u, name)?;
        let id = format!("branching.e8.{label}");
        let rep = branch_with_linkage(&adj8, &lift)?;
        g.check(
            format!("{id}.blocks"),
            format!("V_E8(λ8) under {} is (V(λ2) + 2V(λ1) + V(0)) ⊕ (V(λ6) + V(λ7))", lift.descriptor()),
            sorted_blocks(&rep) == vec![strings(&["0", "λ1", "λ1", "λ2"]), strings(&["λ6", "λ7"])],
            rep.block_notation.clone(),
        );
        g.check(
            format!("{id}.criterion"),
            format!("{} fails the root-vector criterion", lift.descriptor()),
            !indecomposability_criterion(&lift),
            "",
        );
        report_sanity(g, &id, &rep);
    }
    let cartan = phi7.lift(&Weight::zero(7), n8.h.clone(), "H")?;
    let rep = branch_with_linkage(&adj8, &cartan)?;
    g.check(
        "branching.e8.cartan.criterion",
        format!("{} fails the root-vector criterion", cartan.descriptor()),
        !indecomposability_criterion(&cartan),
        "",
    );
    g.check(
        "branching.e8.cartan.singletons",
        "a Cartan radical leaves the E8 adjoint split exactly as under D7",
        rep.linkage_edges.is_empty() && rep.blocks.len() == rep.copies.len(),
        rep.block_notation.clone(),
    );
    report_sanity(g, "branching.e8.cartan", &rep);

    // E7 adjoint, which is V(λ1), under a generic weight-zero lift.
    let e7 = a.get(e(7))?;
    let n7 = e7.named_elements()?;
    let highest = e7.root_system().root_to_weight(e7.root_system().highest_root());
    g.check(
        "branching.e7.adjoint_is_l1",
        "the E7 adjoint module has highest weight λ1",
        highest == Weight::fundamental(7, 1),
        highest.label(),
    );
    let u = n7
        .yp
        .clone()
        .expect("E7 defines Y'")
        .scale(&int(2))
        .add(&n7.xppp.clone().expect("E7 defines X'''").scale(&int(3)))
        .add(&n7.h.scale(&int(5)));
    let adj7 = adjoint_module(e7.clone());
    for v in [Variant::Natural, Variant::Twisted] {
        let emb = EmbeddingMap::with_variant(e7.clone(), v)?;
        let lift = emb.lift(&Weight::zero(6), u.clone(), "2Y' + 3X''' + 5H")?;
        let rep = branch_with_linkage(&adj7, &lift)?;
        let spin = if v == Variant::Natural { "λ5" } else { "λ6" };
        let id = format!("branching.e7.{v}");
        let multiset: BTreeMap<String, usize> =
            rep.constituents.iter().map(|c| (c.weight.label(), c.multiplicity)).collect();
        let want = BTreeMap::from([("λ2".to_string(), 1), (spin.to_string(), 2), ("0".to_string(), 3)]);
        g.check(
            format!("{id}.constituents"),
            format!("V_E7(λ1) under {} has constituents λ2:1, {spin}:2, 0:3", lift.descriptor()),
            multiset == want,
            rep.decomposition.clone(),
        );
        g.check(
            format!("{id}.parameter_dependent"),
            "the grouping inside the repeated constituents is flagged as parameter-dependent",
            rep.parameter_dependent,
            rep.block_notation.clone(),
        );
        g.check(
            format!("{id}.criterion"),
            format!("{} fails the root-vector criterion", lift.descriptor()),
            !indecomposability_criterion(&lift),
            "",
        );
        report_sanity(g, &id, &rep);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_round_trip() {
        for s in Selector::GROUPS.iter().chain([&Selector::All]) {
            assert_eq!(s.name().parse::<Selector>().unwrap(), *s);
        }
        assert!("section8".parse::<Selector>().is_err());
    }

    #[test]
    fn slugs_are_ascii() {
        assert_eq!(slug("[X''']"), "xppp");
        assert_eq!(slug("[Y'] ⊕ [H]"), "yp_plus_h");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 2), 91);
        assert_eq!(binomial(10, 1), 10);
    }

    #[test]
    fn cache_round_trip_and_type_mismatch() {
        let dir = std::env::temp_dir().join(format!("lieabel-suite-{}", std::process::id()));
        let store = Algebras::new(Some(dir.clone()));
        let d5 = SimpleType::d(5).unwrap();
        let built = store.get(d5).unwrap();
        assert!(store.table_path(d5).unwrap().exists());
        let loaded = Algebras::new(Some(dir.clone())).get(d5).unwrap();
        assert_eq!(built.structure_table(), loaded.structure_table());
        assert!(load_table(&store.table_path(d5).unwrap(), SimpleType::d(6).unwrap()).is_err());
        std::fs::remove_dir_all(dir).unwrap();
    }
}
