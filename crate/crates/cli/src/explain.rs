//! Exponent arithmetic printed as a table, computed exactly on rationals.

use anyhow::{bail, Context, Result};
use hedberg::relations::{
    hedberg_theta, lorentz_exponent, mixed_theta, sigma_exponent, sobolev_conjugate, young_oneil_exponent,
};
use num_rational::Ratio;
use std::fmt::Write as _;

pub type Exact = Ratio<i64>;

/// Parse a decimal (`2`, `-0.25`) or a fraction (`3/2`) exactly.
pub fn parse_exact(text: &str) -> Result<Exact> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let (a, b) = (parse_exact(num)?, parse_exact(den)?);
        if b == Exact::from(0) {
            bail!("zero denominator in {text:?}");
        }
        return Ok(a / b);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        bail!("not a decimal or fraction: {text:?}");
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = digits.parse().with_context(|| format!("{text:?} has too many digits"))?;
    let denom = 10i64
        .checked_pow(frac.len() as u32)
        .with_context(|| format!("{text:?} has too many digits"))?;
    let value = Exact::new(numer, denom);
    Ok(if neg { -value } else { value })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    /// `q` with `1/q = 1/p - s/n`.
    Sobolev { n: usize, s: Exact, p: Exact },
    /// `theta = (s - s1) / (beta + s)`.
    Hedberg { s: Exact, s1: Exact, beta: Exact },
    /// Weak-Lorentz exponent `r = n / (n - s)` of the Riesz kernel.
    Riesz { n: usize, s: Exact },
    /// `q` with `1 + 1/q = 1/r + 1/p`.
    YoungOneil { r: Exact, p: Exact },
    /// Range of `sigma(.)` over `[p_minus, p_plus]`, and `theta = s frak_p / n`.
    Mixed {
        n: usize,
        s: Exact,
        frak_p: Exact,
        p_minus: Exact,
        p_plus: Exact,
    },
    /// Range of the pointwise conjugate `q(.)` over `[p_minus, p_plus]`.
    Variable {
        n: usize,
        s: Exact,
        p_minus: Exact,
        p_plus: Exact,
    },
}

struct Row {
    name: &'static str,
    value: Exact,
    relation: &'static str,
}

fn row(name: &'static str, value: Exact, relation: &'static str) -> Row {
    Row { name, value, relation }
}

fn decimal(v: &Exact) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

impl Relation {
    fn header(&self) -> String {
        match self {
            Relation::Sobolev { n, s, p } => format!("sobolev: n = {n}, s = {s}, p = {p}"),
            Relation::Hedberg { s, s1, beta } => format!("hedberg: s = {s}, s1 = {s1}, beta = {beta}"),
            Relation::Riesz { n, s } => format!("riesz: n = {n}, s = {s}"),
            Relation::YoungOneil { r, p } => format!("young-oneil: r = {r}, p = {p}"),
            Relation::Mixed {
                n,
                s,
                frak_p,
                p_minus,
                p_plus,
            } => format!("mixed: n = {n}, s = {s}, frak_p = {frak_p}, p- = {p_minus}, p+ = {p_plus}"),
            Relation::Variable { n, s, p_minus, p_plus } => {
                format!("variable: n = {n}, s = {s}, p- = {p_minus}, p+ = {p_plus}")
            }
        }
    }

    fn rows(&self) -> Result<Vec<Row>> {
        const CONJUGATE: &str = "sobolev-conjugate: 1/q = 1/p - s/n";
        Ok(match self {
            Relation::Sobolev { n, s, p } => vec![row("q", sobolev_conjugate(*n, *s, *p)?, CONJUGATE)],
            Relation::Hedberg { s, s1, beta } => vec![row(
                "theta",
                hedberg_theta(*s, *s1, *beta)?,
                "hedberg-interpolation: theta = (s - s1) / (beta + s)",
            )],
            Relation::Riesz { n, s } => vec![row(
                "r",
                lorentz_exponent(*n, *s)?,
                "riesz-kernel-lorentz: r = n / (n - s)",
            )],
            Relation::YoungOneil { r, p } => vec![row(
                "q",
                young_oneil_exponent(*r, *p)?,
                "young-oneil: 1 + 1/q = 1/r + 1/p",
            )],
            Relation::Mixed {
                n,
                s,
                frak_p,
                p_minus,
                p_plus,
            } => {
                const SIGMA: &str = "mixed-sobolev-exponent: sigma(.) = n p(.) / (n - s frak_p)";
                ordered(p_minus, p_plus)?;
                vec![
                    row("sigma-", sigma_exponent(*n, *s, *frak_p, *p_minus)?, SIGMA),
                    row("sigma+", sigma_exponent(*n, *s, *frak_p, *p_plus)?, SIGMA),
                    row("theta", mixed_theta(*n, *s, *frak_p)?, "mixed-interpolation: theta = s frak_p / n"),
                ]
            }
            Relation::Variable { n, s, p_minus, p_plus } => {
                const POINTWISE: &str = "pointwise-conjugate: 1/q(.) = 1/p(.) - s/n";
                ordered(p_minus, p_plus)?;
                vec![
                    row("q-", sobolev_conjugate(*n, *s, *p_minus)?, POINTWISE),
                    row("q+", sobolev_conjugate(*n, *s, *p_plus)?, POINTWISE),
                ]
            }
        })
    }

    /// Deterministic text table: a header line, then one line per derived
    /// exponent with its exact value, its decimal value and its relation.
    pub fn table(&self) -> Result<String> {
        let rows = self.rows()?;
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header());
        for r in &rows {
            let _ = writeln!(
                out,
                "  {:<7} = {:<8} {:<22} {}",
                r.name,
                r.value.to_string(),
                format!("({})", decimal(&r.value)),
                r.relation
            );
        }
        Ok(out)
    }
}

fn ordered(lo: &Exact, hi: &Exact) -> Result<()> {
    if lo > hi {
        bail!("p- = {lo} exceeds p+ = {hi}");
    }
    Ok(())
}
