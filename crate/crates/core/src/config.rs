//! Lift spec files and the small expression languages they contain.
//!
//! A spec is a JSON object:
//!
//! ```json
//! {
//!   "ambient": "E7",
//!   "source": "D6",
//!   "variant": "natural",
//!   "module": "adjoint",
//!   "lift": {"weight": "0", "element": "alpha*Y' + beta*X''' + gamma*H",
//!            "params": {"alpha": 1, "beta": "2/3", "gamma": -1}}
//! }
//! ```
//!
//! Weights are written `0`, `λ3`, `2λ1+λ4` (also `lambda3`, `l3`) or as a
//! coordinate list `(1,0,0,0,0,0)`. Element expressions are linear
//! combinations of basis atoms with rational coefficients and parameters.
//! Atoms are the named elements (`X'`, `X''`, `X'''`, `Y'`, `Y''`, `H`), simple
//! generators `X3`, `Y3`, `H3`, root vectors by root coordinates `X[0,1,1,1,0,0]`
//! or label `X_011100`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::chevalley::{AlgebraElement, LieAlgebra};
use crate::embed::{EmbedError, EmbeddingMap, Variant};
use crate::exactla::{parse_rational, Rational};
use crate::hwmod::{adjoint_module, construct_irrep, ModuleError, WeightModule};
use crate::rootsys::{Family, SimpleType, Weight};

const MAX_DEPTH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid spec: {0}")]
    Json(String),
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("weight {input:?}: {message}")]
    Weight { input: String, message: String },
    #[error("expression at byte {pos}: {message}")]
    Expr { pos: usize, message: String },
    #[error("field `{field}`: {source}")]
    Embed {
        field: &'static str,
        #[source]
        source: EmbedError,
    },
    #[error("field `module`: {0}")]
    Module(#[from] ModuleError),
}

fn field(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field,
        message: message.into(),
    }
}

fn in_field(name: &'static str) -> impl Fn(ConfigError) -> ConfigError {
    move |e| match e {
        ConfigError::Field { .. } => e,
        other => field(name, other.to_string()),
    }
}

/// A parameter value: JSON integer or a rational string such as `"-3/2"`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LiftDescriptor {
    pub weight: String,
    pub element: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LiftSpec {
    pub ambient: String,
    #[serde(default)]
    pub source: Option<String>,
    #[serde(default = "default_variant")]
    pub variant: String,
    #[serde(default)]
    pub module: Option<String>,
    #[serde(default)]
    pub lift: Option<LiftDescriptor>,
}

fn default_variant() -> String {
    "natural".into()
}

pub fn parse_lift_spec(text: &str) -> Result<LiftSpec, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))
}

/// Which module a spec asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleChoice {
    Adjoint,
    Irreducible(Weight),
}

/// A spec with every field checked and built.
pub struct Resolved {
    pub algebra: Arc<LieAlgebra>,
    pub embedding: EmbeddingMap,
    pub module: ModuleChoice,
}

impl Resolved {
    pub fn build_module(&self) -> Result<WeightModule, ConfigError> {
        Ok(match &self.module {
            ModuleChoice::Adjoint => adjoint_module(self.algebra.clone()),
            ModuleChoice::Irreducible(w) => construct_irrep(self.algebra.clone(), w)?,
        })
    }
}

/// Exceptional ambient named in a spec.
pub fn parse_ambient(s: &str) -> Result<SimpleType, ConfigError> {
    let t: SimpleType = s.trim().parse().map_err(|e| field("ambient", format!("{e}")))?;
    if t.family() != Family::E {
        return Err(field("ambient", format!("{t} is not one of E6, E7, E8")));
    }
    Ok(t)
}

pub fn parse_module_choice(s: &str, rank: usize) -> Result<ModuleChoice, ConfigError> {
    if s.trim() == "adjoint" {
        return Ok(ModuleChoice::Adjoint);
    }
    let w = parse_weight(s, rank)?;
    if !w.is_dominant() {
        return Err(field("module", format!("weight {} is not dominant", w.label())));
    }
    Ok(ModuleChoice::Irreducible(w))
}

/// Checks a parsed spec and builds the algebra, embedding and lift it names.
pub fn resolve(spec: &LiftSpec) -> Result<Resolved, ConfigError> {
    resolve_with(spec, |t| Ok(Arc::new(LieAlgebra::build_type(t))))
}

/// [`resolve`] with a caller-supplied source of algebras.
pub fn resolve_with(
    spec: &LiftSpec,
    algebra_for: impl FnOnce(SimpleType) -> Result<Arc<LieAlgebra>, ConfigError>,
) -> Result<Resolved, ConfigError> {
    let t = parse_ambient(&spec.ambient)?;
    let n = t.rank() - 1;
    if let Some(src) = &spec.source {
        let s: SimpleType = src.trim().parse().map_err(|e| field("source", format!("{e}")))?;
        if s.family() != Family::D || s.rank() != n {
            return Err(field("source", format!("{s} does not embed here; expected D{n}")));
        }
    }
    let variant: Variant = spec.variant.trim().parse().map_err(|e: String| field("variant", e))?;
    let module = match &spec.module {
        Some(m) => parse_module_choice(m, t.rank()).map_err(in_field("module"))?,
        None => ModuleChoice::Adjoint,
    };
    let algebra = algebra_for(t)?;
    let base = EmbeddingMap::with_variant(algebra.clone(), variant).map_err(|e| ConfigError::Embed {
        field: "ambient",
        source: e,
    })?;
    let embedding = match &spec.lift {
        None => base,
        Some(l) => {
            let weight = parse_weight(&l.weight, n).map_err(in_field("lift.weight"))?;
            let params = parse_params(&l.params)?;
            let u = parse_element_expr(&algebra, &l.element, &params).map_err(in_field("lift.element"))?;
            if u.is_zero() {
                return Err(field("lift.element", "expression evaluates to zero"));
            }
            base.lift(&weight, u, l.element.trim()).map_err(|e| ConfigError::Embed {
                field: "lift",
                source: e,
            })?
        }
    };
    Ok(Resolved {
        algebra,
        embedding,
        module,
    })
}

pub fn parse_params(raw: &BTreeMap<String, ParamValue>) -> Result<BTreeMap<String, Rational>, ConfigError> {
    raw.iter()
        .map(|(k, v)| {
            let q = match v {
                ParamValue::Int(i) => Rational::from_integer(BigInt::from(*i)),
                ParamValue::Text(s) => {
                    parse_rational(s).map_err(|e| field("lift.params", format!("{k}: {e}")))?
                }
            };
            Ok((canonical_param(k).to_string(), q))
        })
        .collect()
}

fn canonical_param(name: &str) -> &str {
    match name {
        "α" => "alpha",
        "β" => "beta",
        "γ" => "gamma",
        other => other,
    }
}

/// Parses a weight of the given rank.
pub fn parse_weight(input: &str, rank: usize) -> Result<Weight, ConfigError> {
    let err = |m: &str| ConfigError::Weight {
        input: input.to_string(),
        message: m.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some(inner) = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
    {
        let coords: Vec<i64> = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| err("coordinates must be integers")))
            .collect::<Result<_, _>>()?;
        if coords.len() != rank {
            return Err(err(&format!("expected {rank} coordinates, found {}", coords.len())));
        }
        return Ok(Weight(coords));
    }
    if s == "0" {
        return Ok(Weight::zero(rank));
    }
    let mut coords = vec![0i64; rank];
    for term in s.split('+') {
        let term = term.trim();
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| err("term without a fundamental weight"))?;
        let (mult, rest) = term.split_at(split);
        let mult: i64 = if mult.is_empty() {
            1
        } else {
            mult.parse().map_err(|_| err("multiplier out of range"))?
        };
        let rest = rest.trim_start_matches('*').trim();
        let index = ["λ", "lambda", "l", "w"]
            .iter()
            .find_map(|p| rest.strip_prefix(p))
            .ok_or_else(|| err("expected λ<i>"))?;
        let i: usize = index.parse().map_err(|_| err("bad fundamental weight index"))?;
        if i == 0 || i > rank {
            return Err(err(&format!("index {i} outside 1..={rank}")));
        }
        coords[i - 1] = coords[i - 1].checked_add(mult).ok_or_else(|| err("overflow"))?;
    }
    Ok(Weight(coords))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ConfigError> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                it.next();
            }
            out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                it.next();
            }
            // Trailing primes belong to the name: X''' or X‴.
            while let Some(&(_, d)) = it.peek() {
                let n = match d {
                    '\'' | '′' => 1,
                    '″' => 2,
                    '‴' => 3,
                    _ => break,
                };
                name.extend(std::iter::repeat_n('\'', n));
                it.next();
            }
            out.push((pos, Tok::Ident(name)));
        } else if "+-*/()[],".contains(c) {
            out.push((pos, Tok::Sym(c)));
            it.next();
        } else {
            return Err(ConfigError::Expr {
                pos,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Val {
    Scalar(Rational),
    Elem(AlgebraElement),
}

struct Parser<'a> {
    g: &'a LieAlgebra,
    params: &'a BTreeMap<String, Rational>,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    depth: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ConfigError> {
        Err(ConfigError::Expr {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ConfigError> {
        if self.peek_sym() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Val, ConfigError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.at += 1;
            let rhs = self.term()?;
            let rhs = if c == '-' { negate(rhs) } else { rhs };
            acc = match (acc, rhs) {
                (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a + b),
                (Val::Elem(a), Val::Elem(b)) => Val::Elem(a.add(&b)),
                _ => return self.fail("cannot add a scalar to an algebra element"),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val, ConfigError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.at += 1;
            let rhs = self.unary()?;
            acc = match (c, acc, rhs) {
                ('*', Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a * b),
                ('*', Val::Scalar(a), Val::Elem(e)) | ('*', Val::Elem(e), Val::Scalar(a)) => Val::Elem(e.scale(&a)),
                ('*', Val::Elem(_), Val::Elem(_)) => {
                    return self.fail("product of two algebra elements; use a bracket-free linear combination")
                }
                ('/', _, Val::Scalar(b)) if b.is_zero() => return self.fail("division by zero"),
                ('/', Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a / b),
                ('/', Val::Elem(e), Val::Scalar(b)) => Val::Elem(e.scale(&b.recip())),
                _ => return self.fail("can only divide by a scalar"),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Val, ConfigError> {
        match self.peek_sym() {
            Some('-') => {
                self.at += 1;
                self.descend(|p| p.unary()).map(negate)
            }
            Some('+') => {
                self.at += 1;
                self.descend(|p| p.unary())
            }
            _ => self.atom(),
        }
    }

    fn descend(&mut self, f: impl FnOnce(&mut Self) -> Result<Val, ConfigError>) -> Result<Val, ConfigError> {
        if self.depth >= MAX_DEPTH {
            return self.fail("expression nested too deeply");
        }
        self.depth += 1;
        let v = f(self);
        self.depth -= 1;
        v
    }

    fn atom(&mut self) -> Result<Val, ConfigError> {
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return self.fail("unexpected end of expression");
        };
        match tok {
            Tok::Num(n) => {
                self.at += 1;
                Ok(Val::Scalar(Rational::from_integer(n)))
            }
            Tok::Sym('(') => {
                self.at += 1;
                let v = self.descend(|p| p.expr())?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Sym(c) => self.fail(format!("unexpected `{c}`")),
            Tok::Ident(name) => {
                self.at += 1;
                self.ident(&name)
            }
        }
    }

    fn root_coords(&mut self) -> Result<Vec<i64>, ConfigError> {
        self.expect('[')?;
        let mut coords = Vec::new();
        loop {
            match self.toks.get(self.at) {
                Some((_, Tok::Num(n))) => {
                    let c = i64::try_from(n.clone()).or_else(|_| self.fail("root coordinate out of range"))?;
                    coords.push(c);
                    self.at += 1;
                }
                _ => return self.fail("expected a root coordinate"),
            }
            match self.peek_sym() {
                Some(',') => self.at += 1,
                Some(']') => {
                    self.at += 1;
                    return Ok(coords);
                }
                _ => return self.fail("expected `,` or `]`"),
            }
        }
    }

    fn ident(&mut self, name: &str) -> Result<Val, ConfigError> {
        let g = self.g;
        if let Some(q) = self.params.get(canonical_param(name)) {
            return Ok(Val::Scalar(q.clone()));
        }
        if matches!(name, "X" | "Y") && self.peek_sym() == Some('[') {
            let coords = self.root_coords()?;
            let Some(j) = g.root_system().root_index(&coords) else {
                return self.fail(format!("{coords:?} is not a positive root"));
            };
            let k = if name == "X" { j } else { g.num_positive_roots() + j };
            return Ok(Val::Elem(g.basis(k)));
        }
        if let Some(k) = g.parse_basis_label(name) {
            return Ok(Val::Elem(g.basis(k)));
        }
        let mut chars = name.chars();
        if let (Some(kind @ ('X' | 'Y' | 'H')), rest) = (chars.next(), chars.as_str()) {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                let i: usize = rest.parse().unwrap_or(0);
                if i == 0 || i > g.rank() {
                    return self.fail(format!("generator index {rest} outside 1..={}", g.rank()));
                }
                return Ok(Val::Elem(match kind {
                    'X' => g.x(i),
                    'Y' => g.y(i),
                    _ => g.h(i),
                }));
            }
        }
        if let Ok(named) = g.named_elements() {
            let found = match name {
                "X'" => Some(named.xp),
                "X''" => Some(named.xpp),
                "X'''" => named.xppp,
                "Y'" => named.yp,
                "Y''" => named.ypp,
                "H" => Some(named.h),
                _ => None,
            };
            if let Some(e) = found {
                return Ok(Val::Elem(e));
            }
        }
        self.fail(format!("unknown symbol `{name}` in {}", g.simple_type()))
    }
}

fn negate(v: Val) -> Val {
    match v {
        Val::Scalar(q) => Val::Scalar(-q),
        Val::Elem(e) => Val::Elem(e.neg()),
    }
}

/// Evaluates a linear expression over `g`'s basis.
pub fn parse_element_expr(
    g: &LieAlgebra,
    expr: &str,
    params: &BTreeMap<String, Rational>,
) -> Result<AlgebraElement, ConfigError> {
    let mut p = Parser {
        g,
        params,
        toks: tokenize(expr)?,
        at: 0,
        end: expr.len(),
        depth: 0,
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.fail("trailing input");
    }
    match v {
        Val::Elem(e) => Ok(e),
        Val::Scalar(q) if q.is_zero() => Ok(g.zero()),
        Val::Scalar(_) => p.fail("expression is a number, not an algebra element"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn e6() -> LieAlgebra {
        LieAlgebra::build_type(SimpleType::e(6).unwrap())
    }

    #[test]
    fn weights_in_every_notation() {
        assert_eq!(parse_weight("0", 5).unwrap(), Weight::zero(5));
        assert_eq!(parse_weight("λ4", 5).unwrap(), Weight::fundamental(5, 4));
        assert_eq!(parse_weight("2lambda1 + l3", 4).unwrap(), Weight(vec![2, 0, 1, 0]));
        assert_eq!(parse_weight("(0, 1, 0)", 3).unwrap(), Weight(vec![0, 1, 0]));
        assert!(parse_weight("λ6", 5).is_err());
        assert!(parse_weight("λ0", 5).is_err());
        assert!(parse_weight("(1,0)", 3).is_err());
        assert!(parse_weight("", 3).is_err());
        assert!(parse_weight("99999999999999999999λ1", 3).is_err());
    }

    #[test]
    fn expressions_combine_atoms_linearly() {
        let g = e6();
        let params = BTreeMap::from([("alpha".to_string(), rat(1, 2))]);
        let e = parse_element_expr(&g, "alpha*X1 - 3*(Y2 + H1)/2", &params).unwrap();
        let expected = g
            .x(1)
            .scale(&rat(1, 2))
            .sub(&g.y(2).add(&g.h(1)).scale(&rat(3, 2)));
        assert_eq!(e, expected);
        let named = g.named_elements().unwrap();
        assert_eq!(parse_element_expr(&g, "X''", &params).unwrap(), named.xpp);
        assert!(parse_element_expr(&g, "2 H", &params).is_err());
        assert_eq!(parse_element_expr(&g, "α*H", &params).unwrap(), named.h.scale(&rat(1, 2)));
    }

    #[test]
    fn root_vectors_by_coordinates_and_label() {
        let g = e6();
        let a = parse_element_expr(&g, "X[1,0,1,1,0,0]", &BTreeMap::new()).unwrap();
        let b = parse_element_expr(&g, "X_101100", &BTreeMap::new()).unwrap();
        assert_eq!(a, b);
        assert!(parse_element_expr(&g, "X[1,1,0,0,0,0]", &BTreeMap::new()).is_err());
    }

    #[test]
    fn expression_errors_report_positions() {
        let g = e6();
        let none = BTreeMap::new();
        for bad in ["", "X1 +", "X1 * Y1", "X1 / 0", "X''' ", "Q7", "X9", "(X1", "1 + X1", "X1 $"] {
            assert!(parse_element_expr(&g, bad, &none).is_err(), "{bad}");
        }
        let deep = format!("{}X1{}", "(".repeat(500), ")".repeat(500));
        assert!(parse_element_expr(&g, &deep, &none).is_err());
        assert_eq!(parse_element_expr(&g, "0", &none).unwrap(), g.zero());
        assert_eq!(parse_element_expr(&g, "X1 - X1", &none).unwrap(), g.zero());
    }

    #[test]
    fn spec_resolves_a_parametrized_lift() {
        let spec = parse_lift_spec(
            r#"{"ambient":"E7","source":"D6","variant":"natural",
                "lift":{"weight":"0","element":"alpha*Y' + beta*X''' + gamma*H",
                        "params":{"alpha":1,"beta":"2/3","gamma":-1}}}"#,
        )
        .unwrap();
        let r = resolve(&spec).unwrap();
        assert_eq!(r.module, ModuleChoice::Adjoint);
        assert!(r.embedding.radical().is_some());
    }

    #[test]
    fn spec_errors_name_the_field() {
        let cases = [
            (r#"{"ambient":"F4"}"#, "ambient"),
            (r#"{"ambient":"D5"}"#, "ambient"),
            (r#"{"ambient":"E6","source":"D4"}"#, "source"),
            (r#"{"ambient":"E6","variant":"sideways"}"#, "variant"),
            (r#"{"ambient":"E6","module":"λ9"}"#, "module"),
            (r#"{"ambient":"E6","lift":{"weight":"λ4","element":"X''' "}}"#, "lift.element"),
            (r#"{"ambient":"E6","lift":{"weight":"μ","element":"X''"}}"#, "lift.weight"),
            (r#"{"ambient":"E8","lift":{"weight":"λ1","element":"Y1"}}"#, "lift"),
            (r#"{"ambient":"E6","colour":1}"#, "colour"),
        ];
        for (text, needle) in cases {
            let err = parse_lift_spec(text).and_then(|s| resolve(&s).map(|_| ())).unwrap_err();
            assert!(err.to_string().contains(needle), "{text}: {err}");
        }
    }
}
