//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion combines the relevant suite checks with assertions that
//! use an oracle independent of the library (closed-form dimensions,
//! literal expected values, random matrices).

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lieabel_core::chevalley::LieAlgebra;
use lieabel_core::decomp::decompose_under;
use lieabel_core::embed::EmbeddingMap;
use lieabel_core::exactla::{int, is_zero_vec, nullspace, RationalMatrix};
use lieabel_core::hwmod::construct_irrep;
use lieabel_core::rootsys::{SimpleType, Weight};
use lieabel_core::suite::{run, Algebras, Selector, SuiteReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    problems: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { problems: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }

    /// Every suite check whose id starts with one of `prefixes` must pass,
    /// and at least one must exist.
    fn suite(&mut self, report: &SuiteReport, prefixes: &[&str]) {
        for p in prefixes {
            let hits: Vec<_> = report.checks.iter().filter(|c| c.id.starts_with(p)).collect();
            self.require(!hits.is_empty(), format!("no checks under {p}"));
            for c in hits.into_iter().filter(|c| !c.passed) {
                self.problems.push(format!("{}: {}", c.id, c.detail));
            }
        }
    }
}

/// Dimension of the irreducible `D_n` module with highest weight `w`,
/// from the Weyl product over the orthonormal basis. Coordinates are
/// doubled so the spin weights stay integral.
fn weyl_dim_d(w: &[i64]) -> u128 {
    let n = w.len();
    let mut eps = vec![0i128; n];
    for (k, &c) in w.iter().enumerate() {
        let c = c as i128;
        let node = k + 1;
        if node <= n - 2 {
            for e in eps.iter_mut().take(node) {
                *e += 2 * c;
            }
        } else {
            for e in eps.iter_mut().take(n - 1) {
                *e += c;
            }
            eps[n - 1] += if node == n { c } else { -c };
        }
    }
    let rho: Vec<i128> = (0..n).map(|i| 2 * (n - 1 - i) as i128).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (eps[i] + rho[i], eps[j] + rho[j]);
            num *= a * a - b * b;
            den *= rho[i] * rho[i] - rho[j] * rho[j];
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    assert_eq!(den, 1);
    num as u128
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lam(rank: usize, i: usize) -> Weight {
    if i == 0 {
        Weight::zero(rank)
    } else {
        Weight::fundamental(rank, i)
    }
}

fn multiset(pairs: &[(usize, usize)], rank: usize) -> BTreeMap<Weight, usize> {
    pairs.iter().map(|&(i, m)| (lam(rank, i), m)).collect()
}

fn criterion_1(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["serre.d5", "serre.d6", "serre.d7", "serre.e6", "serre.e7", "serre.e8"]);
    let t = group_time(report, Selector::Serre);
    o.require(t < Duration::from_secs(60), format!("serre took {t:?}"));
    o
}

fn criterion_2(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["dimensions."]);
    for n in 5..=7usize {
        let g = LieAlgebra::build_type(SimpleType::d(n).unwrap());
        o.require(g.dim() == 2 * n * n - n, format!("dim D{n} = {}", g.dim()));
    }
    for (r, d) in [(6, 78), (7, 133), (8, 248)] {
        let g = LieAlgebra::build_type(SimpleType::e(r).unwrap());
        o.require(g.dim() == d, format!("dim E{r} = {}", g.dim()));
    }
    for (n, i, d) in [(7, 1, 14), (6, 5, 32), (6, 6, 32), (5, 4, 16), (5, 5, 16)] {
        let g = Arc::new(LieAlgebra::build_type(SimpleType::d(n).unwrap()));
        let m = construct_irrep(g, &lam(n, i)).unwrap();
        o.require(m.dim() == d, format!("V_D{n}(λ{i}) has dim {}", m.dim()));
        o.require(weyl_dim_d(lam(n, i).coords()) as usize == d, format!("Weyl formula for D{n} λ{i}"));
    }
    o
}

fn criterion_3(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["restrictions."]);
    let expected = [
        (6, "natural", vec![(1, 1), (5, 1), (0, 1)]),
        (6, "twisted", vec![(1, 1), (4, 1), (0, 1)]),
        (7, "natural", vec![(1, 2), (6, 1)]),
        (7, "twisted", vec![(1, 2), (5, 1)]),
        (8, "natural", vec![(1, 2), (2, 1), (6, 1), (7, 1), (0, 1)]),
        (8, "twisted", vec![(1, 2), (2, 1), (6, 1), (7, 1), (0, 1)]),
    ];
    let mut e8_time = Duration::ZERO;
    for (r, variant, pairs) in expected {
        let g = Arc::new(LieAlgebra::build_type(SimpleType::e(r).unwrap()));
        let emb = EmbeddingMap::with_variant(g.clone(), variant.parse().unwrap()).unwrap();
        let start = Instant::now();
        let m = construct_irrep(g, &lam(r, r)).unwrap();
        let d = decompose_under(&m, &emb).unwrap();
        if r == 8 {
            e8_time = e8_time.max(start.elapsed());
        }
        let got: BTreeMap<Weight, usize> = d.multiset().into_iter().collect();
        o.require(got == multiset(&pairs, r - 1), format!("E{r} {variant}: {}", d.notation()));
        let dims: usize = d
            .constituents
            .iter()
            .map(|c| c.multiplicity * weyl_dim_d(c.weight.coords()) as usize)
            .sum();
        o.require(dims == m.dim(), format!("E{r} {variant}: Weyl dimensions sum to {dims}"));
    }
    o.require(e8_time < Duration::from_secs(120), format!("E8 adjoint decomposition took {e8_time:?}"));
    o
}

fn criterion_4(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["adjoint."]);
    let expected: [(usize, Vec<usize>); 3] = [
        (8, vec![91, 14, 64, 64, 14, 1]),
        (7, vec![66, 32, 32, 1, 1, 1]),
        (6, vec![45, 16, 16, 1]),
    ];
    for (r, terms) in expected {
        let mut terms = terms;
        terms.sort_unstable();
        o.require(terms.iter().sum::<usize>() == [0, 0, 0, 0, 0, 0, 78, 133, 248][r], format!("E{r} literal sum"));
        let variants: &[&str] = if r == 8 { &["natural"] } else { &["natural", "twisted"] };
        for v in variants {
            let g = Arc::new(LieAlgebra::build_type(SimpleType::e(r).unwrap()));
            let emb = EmbeddingMap::with_variant(g.clone(), v.parse().unwrap()).unwrap();
            let m = lieabel_core::hwmod::adjoint_module(g);
            let d = decompose_under(&m, &emb).unwrap();
            let mut got: Vec<usize> = d
                .constituents
                .iter()
                .flat_map(|c| std::iter::repeat_n(weyl_dim_d(c.weight.coords()) as usize, c.multiplicity))
                .collect();
            got.sort_unstable();
            o.require(got == terms, format!("E{r} {v} adjoint terms {got:?}"));
        }
    }
    o
}

fn criterion_5(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["catalogs.", "abelian."]);
    o
}

fn criterion_6(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["classify.", "tables"]);
    let subst = report.checks.iter().find(|c| c.id == "classify.e7.sl2.substitution");
    let instances = subst
        .and_then(|c| c.detail.split_whitespace().find_map(|w| w.parse::<usize>().ok()))
        .unwrap_or(0);
    o.require(instances >= 20, format!("substitution verified on {instances} instances"));
    o
}

fn criterion_7(report: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    o.suite(report, &["branching."]);
    for v in ["natural", "twisted"] {
        for lift in ["xpp", "y1"] {
            o.suite(report, &[&format!("branching.e6.{v}.{lift}.criterion")]);
        }
    }
    o
}

fn criterion_8(report: &SuiteReport, again: &SuiteReport) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=7);
        let cols = rng.gen_range(1..=7);
        let data: Vec<Vec<_>> = (0..rows)
            .map(|_| (0..cols).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = RationalMatrix::from_rows(cols, data).unwrap();
        let kernel = nullspace(&m);
        o.require(m.rank() + kernel.len() == cols, format!("rank-nullity fails on\n{m}"));
        for v in &kernel {
            o.require(is_zero_vec(&m.mul_vec(v).unwrap()), "nullspace vector not in kernel");
        }
    }
    let weyl: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.id.starts_with("dimensions.module."))
        .collect();
    o.require(weyl.len() >= 12 && weyl.iter().all(|c| c.passed), "Weyl symmetry on constructed modules");
    let commuting: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.id.ends_with(".radical_commutes"))
        .collect();
    o.require(commuting.len() >= 10 && commuting.iter().all(|c| c.passed), "radical actions commute");
    let a = serde_json::to_string(report).unwrap();
    let b = serde_json::to_string(again).unwrap();
    o.require(a == b, "two runs of verify all differ");
    o
}

fn group_time(report: &SuiteReport, s: Selector) -> Duration {
    report
        .timings
        .iter()
        .find(|(g, _)| *g == s)
        .map(|(_, t)| *t)
        .unwrap_or(Duration::MAX)
}

fn main() -> ExitCode {
    let report = run(Selector::All, &Algebras::new(None));
    let again = run(Selector::All, &Algebras::new(None));
    let criteria: [(&str, Outcome); 8] = [
        ("1 serre and jacobi", criterion_1(&report)),
        ("2 dimension identities", criterion_2(&report)),
        ("3 branching witnesses", criterion_3(&report)),
        ("4 adjoint decompositions", criterion_4(&report)),
        ("5 abelian catalogs", criterion_5(&report)),
        ("6 classification tables", criterion_6(&report)),
        ("7 linkage and indecomposability", criterion_7(&report)),
        ("8 property suites and determinism", criterion_8(&report, &again)),
    ];
    let mut all = true;
    for (name, o) in &criteria {
        let ok = o.problems.is_empty();
        all &= ok;
        println!("{} criterion {name}", if ok { "PASS" } else { "FAIL" });
        for p in &o.problems {
            println!("    {p}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
