//! JSON input formats: Hopf data, comodules (complex tables or constructor
//! expressions), comodule algebras and equivariant modules. Scalars are
//! integers or strings such as `"-3/2"`, `"ζ"`, `"2*ζ^2 - 1"` or
//! `"zeta12^5"`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::comodule::{
    b_lower, direct_sum, from_complex, from_mixed, from_n_complex, projective_p, regular_b, simple, tensor, unit,
    Comodule, GradedComplex, MixedComplex,
};
use crate::error::{Error, Result};
use crate::homrep::{ComoduleAlgebra, EquivariantModule};
use crate::hopf::{HopfAlgebra, HopfDatum};
use crate::linalg::{Ring, SparseMatrix, SparseVec};
use crate::scalars::{root_of_unity, CycScalar};
use crate::stable::{desuspend, shift, suspend};
use crate::{Matrix, Vector};
use num_traits::Zero;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_datum(json: &str) -> Result<HopfDatum> {
    serde_json::from_str(json).map_err(|e| parse_err(format!("datum: {e}")))
}

/// The named data `dg`, `mixed`, `rank-two` and `ncomplex:N`.
pub fn named_datum(name: &str) -> Option<HopfDatum> {
    match name {
        "dg" => Some(HopfDatum::dg()),
        "mixed" => Some(HopfDatum::mixed()),
        "rank-two" => Some(HopfDatum::rank_two_example()),
        _ => name.strip_prefix("ncomplex:")?.parse().ok().filter(|n| *n >= 2).map(HopfDatum::n_complex),
    }
}

/// An entry of a matrix or vector.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

impl ScalarSpec {
    pub fn value(&self, order: u32) -> Result<CycScalar> {
        match self {
            ScalarSpec::Int(n) => Ok(CycScalar::from_integer(*n)),
            ScalarSpec::Text(s) => parse_scalar(s, order),
        }
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse().map_err(|_| parse_err(format!("'{s}' is not an integer")))
}

fn parse_coefficient(s: &str) -> Result<CycScalar> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err(parse_err("zero denominator"));
            }
            Ok(CycScalar::from_fraction(parse_int(n)?, d))
        }
        None => Ok(CycScalar::from_integer(parse_int(s)?)),
    }
}

/// ζ, ζ^e, ζL^e or the ASCII spelling zeta. An explicit L must divide the
/// datum's cyclotomic order.
fn parse_root(s: &str, order: u32) -> Result<CycScalar> {
    let rest = s
        .strip_prefix('ζ')
        .or_else(|| s.strip_prefix("zeta"))
        .ok_or_else(|| parse_err(format!("'{s}' is not a number or root of unity")))?;
    let (base, exp) = match rest.split_once('^') {
        Some((b, e)) => (b, parse_int(e.trim_start_matches('(').trim_end_matches(')'))?),
        None => (rest, 1),
    };
    let base: u32 = if base.is_empty() {
        order
    } else {
        base.parse().map_err(|_| parse_err(format!("bad root order in '{s}'")))?
    };
    if base == 0 || !order.is_multiple_of(base) {
        return Err(parse_err(format!("ζ{base} is not in ℚ(ζ{order})")));
    }
    Ok(root_of_unity(order, exp * (order / base) as i64))
}

fn parse_term(s: &str, order: u32) -> Result<CycScalar> {
    if s.is_empty() {
        return Err(parse_err("empty term"));
    }
    match s.split_once('*') {
        Some((c, r)) => Ok(parse_coefficient(c)?.mul_ref(&parse_root(r, order)?)),
        None if s.starts_with(|c: char| c.is_ascii_digit()) => parse_coefficient(s),
        None => parse_root(s, order),
    }
}

/// Parses a sum of terms `c`, `ζ^e` and `c*ζ^e` in ℚ(ζ_order).
pub fn parse_scalar(s: &str, order: u32) -> Result<CycScalar> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(parse_err("empty scalar"));
    }
    let mut total = CycScalar::zero();
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            negative ^= chars[i] == '-';
            i += 1;
        }
        let start = i;
        // a sign right after '^' belongs to the exponent
        while i < chars.len() && !((chars[i] == '+' || chars[i] == '-') && i > start && chars[i - 1] != '^') {
            i += 1;
        }
        let term: String = chars[start..i].iter().collect();
        let t = parse_term(&term, order).map_err(|e| parse_err(format!("in '{s}': {e}")))?;
        total = total.add_ref(&if negative { t.neg_ref() } else { t });
    }
    Ok(total)
}

/// A dense matrix given as a list of rows.
pub type MatrixSpec = Vec<Vec<ScalarSpec>>;

pub fn matrix_from_rows(rows: &MatrixSpec, nrows: usize, ncols: usize, order: u32) -> Result<Matrix> {
    if rows.is_empty() {
        return Ok(SparseMatrix::zero(nrows, ncols));
    }
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(parse_err(format!("expected a {nrows}x{ncols} matrix")));
    }
    let mut cols: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let v = x.value(order)?;
            if !v.is_zero() {
                cols[j].push((i, v));
            }
        }
    }
    Ok(SparseMatrix::from_columns(nrows, cols.into_iter().map(SparseVec::from_pairs).collect()))
}

fn vector_from(entries: &[ScalarSpec], order: u32) -> Result<Vector> {
    let mut pairs = Vec::new();
    for (i, x) in entries.iter().enumerate() {
        pairs.push((i, x.value(order)?));
    }
    Ok(SparseVec::from_pairs(pairs.into_iter().filter(|(_, v)| !v.is_zero())))
}

/// A comodule given by a complex table or a constructor expression.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComoduleSpec {
    /// dg vector space: `matrices[n]` is ∂_n: M_n → M_{n−1} as rows.
    Complex {
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        matrices: BTreeMap<String, MatrixSpec>,
    },
    /// N-complex over the datum's single generator.
    Ncomplex {
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        matrices: BTreeMap<String, MatrixSpec>,
    },
    /// `d[n]`: M_n → M_{n−1}, `b[n]`: M_n → M_{n+1}.
    Mixed {
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        d: BTreeMap<String, MatrixSpec>,
        #[serde(default)]
        b: BTreeMap<String, MatrixSpec>,
    },
    Expr {
        expr: String,
    },
}

fn degree_keys(dims: &BTreeMap<String, usize>) -> Result<BTreeMap<i64, usize>> {
    dims.iter().map(|(k, v)| Ok((parse_int(k)?, *v))).collect()
}

fn blocks(
    dims: &BTreeMap<i64, usize>,
    maps: &BTreeMap<String, MatrixSpec>,
    step: i64,
    order: u32,
) -> Result<BTreeMap<i64, Matrix>> {
    let dim = |k: i64| dims.get(&k).copied().unwrap_or(0);
    maps.iter()
        .map(|(k, rows)| {
            let n = parse_int(k)?;
            Ok((n, matrix_from_rows(rows, dim(n + step), dim(n), order)?))
        })
        .collect()
}

impl ComoduleSpec {
    pub fn build(&self, alg: &HopfAlgebra) -> Result<Comodule> {
        let order = alg.order();
        match self {
            ComoduleSpec::Complex { dims, matrices } | ComoduleSpec::Ncomplex { dims, matrices } => {
                let dims = degree_keys(dims)?;
                let maps = blocks(&dims, matrices, -1, order)?;
                let c = GradedComplex { dims, maps };
                if matches!(self, ComoduleSpec::Complex { .. }) {
                    from_complex(alg, &c)
                } else {
                    from_n_complex(alg, &c)
                }
            }
            ComoduleSpec::Mixed { dims, d, b } => {
                let dims = degree_keys(dims)?;
                let c = MixedComplex {
                    d: blocks(&dims, d, -1, order)?,
                    b: blocks(&dims, b, 1, order)?,
                    dims,
                };
                from_mixed(alg, &c)
            }
            ComoduleSpec::Expr { expr } => parse_expr(expr, alg),
        }
    }
}

pub fn parse_comodule(json: &str, alg: &HopfAlgebra) -> Result<Comodule> {
    let spec: ComoduleSpec = serde_json::from_str(json).map_err(|e| parse_err(format!("comodule: {e}")))?;
    spec.build(alg)
}

/// Arguments of a constructor call.
enum Arg {
    Object(Comodule),
    Int(i64),
    Degree(Vec<i64>),
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
    alg: &'a HopfAlgebra,
}

impl ExprParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_err(format!("expected '{c}' at offset {} of '{}'", self.pos, self.src)))
        }
    }

    fn take_while(&mut self, ok: impl Fn(char) -> bool) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len: usize = self.rest().chars().take_while(|c| ok(*c)).map(char::len_utf8).sum();
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
        let v = parse_int(&digits)?;
        Ok(if neg { -v } else { v })
    }

    fn arg(&mut self) -> Result<Arg> {
        self.skip_ws();
        if self.eat('[') {
            let mut v = Vec::new();
            if !self.eat(']') {
                loop {
                    v.push(self.int()?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            return Ok(Arg::Degree(v));
        }
        if self.rest().starts_with(|c: char| c == '-' || c.is_ascii_digit()) {
            return Ok(Arg::Int(self.int()?));
        }
        Ok(Arg::Object(self.object()?))
    }

    fn object(&mut self) -> Result<Comodule> {
        let name = self.take_while(|c| c.is_alphanumeric() || c == '_' || c == '<').to_string();
        if name.is_empty() {
            return Err(parse_err(format!("expected a constructor at offset {} of '{}'", self.pos, self.src)));
        }
        let mut args = Vec::new();
        if self.eat('(') && !self.eat(')') {
            loop {
                args.push(self.arg()?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        self.apply(&name, args)
    }

    fn apply(&self, name: &str, args: Vec<Arg>) -> Result<Comodule> {
        let alg = self.alg;
        let objects = |args: &[Arg]| -> Result<Vec<Comodule>> {
            args.iter()
                .map(|a| match a {
                    Arg::Object(m) => Ok(m.clone()),
                    _ => Err(parse_err(format!("{name} takes comodules"))),
                })
                .collect()
        };
        let one = |args: &[Arg]| -> Result<Comodule> {
            match objects(args)?.as_slice() {
                [m] => Ok(m.clone()),
                _ => Err(parse_err(format!("{name} takes one comodule"))),
            }
        };
        match (name, args.as_slice()) {
            ("k" | "unit", []) => Ok(unit(alg)),
            ("B", []) => Ok(regular_b(alg)),
            ("B_lower" | "B_<top", []) => Ok(b_lower(alg)),
            ("P", []) => projective_p(alg),
            ("simple", [Arg::Degree(a)]) => simple(alg, a),
            ("simple", [Arg::Int(a)]) => simple(alg, &[*a]),
            ("tensor" | "sum", [_, _, ..]) => {
                let ms = objects(&args)?;
                let f = if name == "tensor" { tensor } else { direct_sum };
                ms[1..].iter().try_fold(ms[0].clone(), |acc, m| f(&acc, m))
            }
            ("T" | "suspend", [_]) => suspend(&one(&args)?),
            ("Tinv" | "desuspend", [_]) => desuspend(&one(&args)?),
            ("shift", [Arg::Object(m), Arg::Int(n)]) => shift(m, *n),
            _ => Err(parse_err(format!(
                "unknown constructor or arity: {name}/{}; expected k, B, B_lower, P, simple(a), tensor(..), sum(..), T(m), Tinv(m), shift(m, n)",
                args.len()
            ))),
        }
    }
}

/// Evaluates a constructor expression such as `tensor(B, simple([1]))`.
pub fn parse_expr(src: &str, alg: &HopfAlgebra) -> Result<Comodule> {
    let mut p = ExprParser { src, pos: 0, alg };
    let m = p.object()?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return Err(parse_err(format!("trailing input '{}'", p.rest())));
    }
    Ok(m)
}

/// A comodule algebra: the ground field, k[t]/tⁿ with trivial coaction, or
/// an explicit table of left multiplications.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraSpec {
    Ground,
    Truncated {
        n: usize,
    },
    Table {
        object: ComoduleSpec,
        left: Vec<MatrixSpec>,
        unit: Vec<ScalarSpec>,
    },
}

impl AlgebraSpec {
    pub fn build(&self, alg: &HopfAlgebra) -> Result<ComoduleAlgebra> {
        match self {
            AlgebraSpec::Ground => Ok(ComoduleAlgebra::ground(alg)),
            AlgebraSpec::Truncated { n } if *n >= 1 => Ok(ComoduleAlgebra::truncated_polynomial(alg, *n)),
            AlgebraSpec::Truncated { .. } => Err(parse_err("k[t]/t^n needs n ≥ 1")),
            AlgebraSpec::Table { object, left, unit } => {
                let m = object.build(alg)?;
                let n = m.dim();
                let left = left
                    .iter()
                    .map(|rows| matrix_from_rows(rows, n, n, alg.order()))
                    .collect::<Result<_>>()?;
                ComoduleAlgebra::new(m, left, vector_from(unit, alg.order())?)
            }
        }
    }
}

/// An equivariant module: a plain comodule (A must be k), the free module
/// A ⊗ object, or an explicit action.
#[derive(Clone, Debug, Deserialize)]
pub struct ModuleSpec {
    #[serde(default = "ground_spec")]
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub kind: ModuleKind,
    pub object: ComoduleSpec,
    #[serde(default)]
    pub action: Vec<MatrixSpec>,
}

fn ground_spec() -> AlgebraSpec {
    AlgebraSpec::Ground
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    #[default]
    Plain,
    Free,
    Table,
}

impl ModuleSpec {
    pub fn build(&self, alg: &HopfAlgebra) -> Result<EquivariantModule> {
        let a = self.algebra.build(alg)?;
        let m = self.object.build(alg)?;
        match self.kind {
            ModuleKind::Plain if a.dim() == 1 => Ok(EquivariantModule::over_ground(&m)),
            ModuleKind::Plain => Err(parse_err("a plain module needs the ground algebra; use kind free or table")),
            ModuleKind::Free => EquivariantModule::free(&a, &m),
            ModuleKind::Table => {
                let n = m.dim();
                let action = self
                    .action
                    .iter()
                    .map(|rows| matrix_from_rows(rows, n, n, alg.order()))
                    .collect::<Result<_>>()?;
                EquivariantModule::new(&a, m, action)
            }
        }
    }
}

pub fn parse_module(json: &str, alg: &HopfAlgebra) -> Result<EquivariantModule> {
    let spec: ModuleSpec = serde_json::from_str(json).map_err(|e| parse_err(format!("module: {e}")))?;
    spec.build(alg)
}
