use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::coe::TraceMoment;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `x(i,j)`
    Plain,
    /// `conj(x(i,j))`
    Conj,
    /// `|x(i,j)|`
    Abs,
}

/// One factor `x(row,col)^power`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: FactorKind,
    pub row: usize,
    pub col: usize,
    pub power: u32,
}

/// A monomial in matrix entries, or one of the degree-two trace moments.
///
/// Text form: factors `x(i,j)`, `conj(x(i,j))` or `|x(i,j)|`, each with an
/// optional `^k`, joined by `*`; or a keyword `tr4`, `tr2sq`, `mixed`. The
/// letter before the parenthesis may be any of `x`, `u`, `v`, `o`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MomentSpec {
    Monomial(Vec<Factor>),
    Trace(TraceMoment),
}

/// Entry positions of the plain and conjugated factors, 1-based.
pub type IndexPairs = (Vec<(usize, usize)>, Vec<(usize, usize)>);

impl MomentSpec {
    /// `|x(i,j)|^{2n}`
    pub fn abs_power(row: usize, col: usize, power: u32) -> Self {
        MomentSpec::Monomial(vec![Factor {
            kind: FactorKind::Abs,
            row,
            col,
            power,
        }])
    }

    /// Largest index used, or `None` for a trace moment (which needs the full matrix).
    pub fn max_index(&self) -> Option<usize> {
        match self {
            MomentSpec::Monomial(fs) => fs.iter().map(|f| f.row.max(f.col)).max(),
            MomentSpec::Trace(_) => None,
        }
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        match self.max_index() {
            Some(m) if m > n => Err(Error::domain(format!("index {m} exceeds dimension N = {n}"))),
            _ => Ok(()),
        }
    }

    /// Expands into plain and conjugated entry lists; `None` when an odd
    /// power of a modulus makes the monomial non-polynomial.
    pub fn index_pairs(&self) -> Option<IndexPairs> {
        let MomentSpec::Monomial(fs) = self else {
            return None;
        };
        let (mut plain, mut conj) = (Vec::new(), Vec::new());
        for f in fs {
            let at = (f.row, f.col);
            let (p, c) = match f.kind {
                FactorKind::Plain => (f.power, 0),
                FactorKind::Conj => (0, f.power),
                FactorKind::Abs if f.power % 2 == 0 => (f.power / 2, f.power / 2),
                FactorKind::Abs => return None,
            };
            plain.extend(std::iter::repeat_n(at, p as usize));
            conj.extend(std::iter::repeat_n(at, c as usize));
        }
        Some((plain, conj))
    }

    /// Value on one sample. `x` holds entry `(i,j)` at `x[(i-1,j-1)]`; trace
    /// moments need the whole square matrix.
    pub fn evaluate(&self, x: &DMatrix<Complex64>) -> Complex64 {
        match self {
            MomentSpec::Monomial(fs) => fs.iter().fold(Complex64::new(1.0, 0.0), |acc, f| {
                let z = x[(f.row - 1, f.col - 1)];
                acc * match f.kind {
                    FactorKind::Plain => z.powu(f.power),
                    FactorKind::Conj => z.conj().powu(f.power),
                    FactorKind::Abs if f.power % 2 == 0 => Complex64::new(z.norm_sqr().powi(f.power as i32 / 2), 0.0),
                    FactorKind::Abs => Complex64::new(z.norm().powi(f.power as i32), 0.0),
                }
            }),
            MomentSpec::Trace(t) => {
                let tr = x.trace();
                let tr2: Complex64 = x.iter().zip(x.transpose().iter()).map(|(a, b)| a * b).sum();
                match t {
                    TraceMoment::Tr4 => Complex64::new(tr.norm_sqr().powi(2), 0.0),
                    TraceMoment::Tr2Sq => Complex64::new(tr2.norm_sqr(), 0.0),
                    TraceMoment::Mixed => tr2 * (tr * tr).conj(),
                }
            }
        }
    }
}

impl fmt::Display for MomentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = match self {
            MomentSpec::Trace(t) => return f.write_str(t.name()),
            MomentSpec::Monomial(fs) => fs,
        };
        for (k, x) in fs.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            match x.kind {
                FactorKind::Plain => write!(f, "x({},{})", x.row, x.col)?,
                FactorKind::Conj => write!(f, "conj(x({},{}))", x.row, x.col)?,
                FactorKind::Abs => write!(f, "|x({},{})|", x.row, x.col)?,
            }
            if x.power != 1 {
                write!(f, "^{}", x.power)?;
            }
        }
        Ok(())
    }
}

fn parse_entry(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::parse(format!("expected x(i,j), got `{s}`"));
    let rest = s.strip_prefix(['x', 'u', 'v', 'o']).ok_or_else(bad)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (i, j) = inner.split_once(',').ok_or_else(bad)?;
    let index = |t: &str| -> Result<usize> {
        match t.parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::parse(format!("bad index `{t}` (indices are 1-based)"))),
            Ok(v) => Ok(v),
        }
    };
    Ok((index(i)?, index(j)?))
}

/// Splits on `*` outside parentheses and modulus bars.
fn split_top(s: &str) -> Result<Vec<&str>> {
    let (mut depth, mut bars, mut start, mut out) = (0i32, false, 0, Vec::new());
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' if depth == 0 => bars = !bars,
            '*' if depth == 0 && !bars => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::parse(format!("unbalanced parentheses in `{s}`")));
        }
    }
    if depth != 0 || bars {
        return Err(Error::parse(format!("unbalanced parentheses in `{s}`")));
    }
    out.push(&s[start..]);
    Ok(out)
}

/// One factor, or several when `conj(...)` or `|...|` wraps a product.
fn parse_factor(s: &str) -> Result<Vec<Factor>> {
    let (body, power) = match s.rsplit_once('^').filter(|(_, p)| !p.contains(')') && !p.contains('|')) {
        Some((b, p)) => {
            let power = p
                .parse::<u32>()
                .ok()
                .filter(|&p| p > 0)
                .ok_or_else(|| Error::parse(format!("bad exponent `{p}`")))?;
            (b, power)
        }
        None => (s, 1),
    };
    if let Some(inner) = body.strip_prefix("conj(").and_then(|r| r.strip_suffix(')')) {
        let mut out = Vec::new();
        for part in split_top(inner)? {
            for mut f in parse_factor(part)? {
                f.kind = match f.kind {
                    FactorKind::Plain => FactorKind::Conj,
                    FactorKind::Conj => FactorKind::Plain,
                    FactorKind::Abs => FactorKind::Abs,
                };
                f.power *= power;
                out.push(f);
            }
        }
        return Ok(out);
    }
    if let Some(inner) = body.strip_prefix('|').and_then(|r| r.strip_suffix('|')) {
        let mut out = Vec::new();
        for part in split_top(inner)? {
            for mut f in parse_factor(part)? {
                f.kind = FactorKind::Abs;
                f.power *= power;
                out.push(f);
            }
        }
        return Ok(out);
    }
    let (row, col) = parse_entry(body)?;
    Ok(vec![Factor {
        kind: FactorKind::Plain,
        row,
        col,
        power,
    }])
}

impl FromStr for MomentSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("empty moment spec"));
        }
        if let Ok(t) = s.parse::<TraceMoment>() {
            return Ok(MomentSpec::Trace(t));
        }
        let mut factors = Vec::new();
        for part in split_top(&s)? {
            if part.is_empty() {
                return Err(Error::parse(format!("empty factor in `{s}`")));
            }
            factors.extend(parse_factor(part)?);
        }
        Ok(MomentSpec::Monomial(factors))
    }
}
