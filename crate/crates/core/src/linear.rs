//! Exact solvability of integer linear systems with congruence rows.
//!
//! The solver diagonalises the coefficient matrix with unimodular row and
//! column operations. A congruence `∑ c_i x_i ≡ c (mod m)` is the equation
//! `∑ c_i x_i + m k = c` with a fresh unknown `k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Integer types the solver runs over.
pub trait Scalar:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + FromStr + From<i64>
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + fmt::Debug + fmt::Display + FromStr + From<i64>
{
}

/// `∑ coeffs = rhs`, or `≡ rhs (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation<T> {
    pub coeffs: Vec<(T, String)>,
    pub modulus: Option<T>,
    pub rhs: T,
}

impl<T: Scalar> Equation<T> {
    pub fn new(coeffs: Vec<(T, String)>, rhs: T) -> Self {
        Equation {
            coeffs,
            modulus: None,
            rhs,
        }
    }

    pub fn congruence(coeffs: Vec<(T, String)>, rhs: T, modulus: T) -> Self {
        Equation {
            coeffs,
            modulus: Some(modulus),
            rhs,
        }
    }

    pub fn holds(&self, values: &BTreeMap<String, T>) -> bool {
        let mut lhs = T::zero();
        for (c, x) in &self.coeffs {
            let v = values.get(x).cloned().unwrap_or_else(T::zero);
            lhs = lhs + c.clone() * v;
        }
        let diff = lhs - self.rhs.clone();
        match &self.modulus {
            None => diff.is_zero(),
            Some(m) => diff.mod_floor(m).is_zero(),
        }
    }
}

impl<T: Scalar> fmt::Display for Equation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, (c, x)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c} {x}")?;
        }
        write!(f, " = {}", self.rhs)?;
        if let Some(m) = &self.modulus {
            write!(f, " mod {m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System<T> {
    pub equations: Vec<Equation<T>>,
}

impl<T> Default for System<T> {
    fn default() -> Self {
        System {
            equations: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityResult<T> {
    pub status: Status,
    pub witness: Option<BTreeMap<String, T>>,
}

impl<T> SolvabilityResult<T> {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }
}

impl<T: Scalar> System<T> {
    pub fn new(equations: Vec<Equation<T>>) -> Self {
        System { equations }
    }

    pub fn push(&mut self, eq: Equation<T>) {
        self.equations.push(eq);
    }

    /// Unknown names in order of first appearance.
    pub fn unknowns(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for eq in &self.equations {
            for (_, x) in &eq.coeffs {
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                }
            }
        }
        out
    }

    pub fn is_satisfied_by(&self, values: &BTreeMap<String, T>) -> bool {
        self.equations.iter().all(|e| e.holds(values))
    }

    pub fn solve(&self) -> SolvabilityResult<T> {
        let names = self.unknowns();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let moduli = self
            .equations
            .iter()
            .filter(|e| e.modulus.is_some())
            .count();
        let cols = names.len() + moduli;
        let mut a = vec![vec![T::zero(); cols]; self.equations.len()];
        let mut b = Vec::with_capacity(self.equations.len());
        let mut extra = names.len();
        for (r, eq) in self.equations.iter().enumerate() {
            for (c, x) in &eq.coeffs {
                let j = index[x.as_str()];
                a[r][j] = a[r][j].clone() + c.clone();
            }
            if let Some(m) = &eq.modulus {
                a[r][extra] = m.clone();
                extra += 1;
            }
            b.push(eq.rhs.clone());
        }
        let Some(y) = solve_dense(a, b, cols) else {
            return SolvabilityResult {
                status: Status::Unsat,
                witness: None,
            };
        };
        let witness: BTreeMap<String, T> = names.into_iter().zip(y).collect();
        debug_assert!(self.is_satisfied_by(&witness));
        SolvabilityResult {
            status: Status::Sat,
            witness: Some(witness),
        }
    }

    /// One equation per line: `3 x_b -1 y_b = 0`, optionally followed by `mod 4`.
    /// A bare name has coefficient 1; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sys = System::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = crate::presentation::strip_comment(line);
            if line.trim().is_empty() {
                continue;
            }
            sys.push(parse_equation(line, lineno + 1)?);
        }
        Ok(sys)
    }
}

impl<T: Scalar> fmt::Display for System<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{eq}")?;
        }
        Ok(())
    }
}

fn parse_equation<T: Scalar>(line: &str, lineno: usize) -> Result<Equation<T>> {
    let column = |tok: &str| line.find(tok).map_or(1, |i| i + 1);
    let num = |tok: &str| {
        tok.parse::<T>().map_err(|_| {
            Error::parse(
                lineno,
                column(tok),
                format!("expected an integer, found `{tok}`"),
            )
        })
    };
    let (lhs, rest) = line
        .split_once('=')
        .ok_or_else(|| Error::parse(lineno, 1, "missing `=`"))?;
    let rest: Vec<&str> = rest.split_whitespace().collect();
    let (rhs_tok, modulus) = match rest.as_slice() {
        [r] => (*r, None),
        [r, "mod", m] => (*r, Some(num(m)?)),
        _ => {
            return Err(Error::parse(
                lineno,
                column("=") + 1,
                "expected `<int>` or `<int> mod <int>` after `=`",
            ))
        }
    };
    let mut rhs: T = num(rhs_tok)?;
    if let Some(m) = &modulus {
        if *m < T::from(2) {
            return Err(Error::parse(
                lineno,
                column("mod"),
                "modulus must be at least 2",
            ));
        }
    }
    let toks: Vec<&str> = lhs.split_whitespace().collect();
    let mut coeffs = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let tok = toks[i];
        if let Ok(c) = tok.parse::<T>() {
            match toks.get(i + 1) {
                Some(name) if name.parse::<T>().is_err() => {
                    coeffs.push((c, name.to_string()));
                    i += 2;
                }
                _ => {
                    rhs = rhs - c;
                    i += 1;
                }
            }
        } else if tok
            .chars()
            .all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '.')
        {
            coeffs.push((T::one(), tok.to_string()));
            i += 1;
        } else {
            return Err(Error::parse(
                lineno,
                column(tok),
                format!("unexpected token `{tok}`"),
            ));
        }
    }
    Ok(Equation {
        coeffs,
        modulus,
        rhs,
    })
}

/// Finds one integer solution of `a y = b`, or `None`.
fn solve_dense<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    // Column operations are accumulated in `v` so that y = v z.
    let mut v: Vec<Vec<T>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let t = rank;
        let Some((pr, pc)) = smallest_entry(&a, t, t) else {
            break;
        };
        a.swap(t, pr);
        b.swap(t, pr);
        swap_cols(&mut a, t, pc);
        swap_cols(&mut v, t, pc);
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let sub = q.clone() * a[t][c].clone();
                    a[r][c] = a[r][c].clone() - sub;
                }
                b[r] = b[r].clone() - q * b[t].clone();
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for r in t..rows {
                    let sub = q.clone() * a[r][t].clone();
                    a[r][c] = a[r][c].clone() - sub;
                }
                for row in v.iter_mut() {
                    let sub = q.clone() * row[t].clone();
                    row[c] = row[c].clone() - sub;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A nonzero remainder is smaller than the pivot; move it into place.
            let (pr, pc) = smallest_in_cross(&a, t);
            a.swap(t, pr);
            b.swap(t, pr);
            swap_cols(&mut a, t, pc);
            swap_cols(&mut v, t, pc);
        }
        rank += 1;
    }
    if b[rank..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![T::zero(); cols];
    for t in 0..rank {
        let (q, r) = b[t].div_rem(&a[t][t]);
        if !r.is_zero() {
            return None;
        }
        z[t] = q;
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).fold(T::zero(), |acc, j| acc + v[i][j].clone() * z[j].clone()))
            .collect(),
    )
}

fn smallest_entry<T: Scalar>(a: &[Vec<T>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (r, row) in a.iter().enumerate().skip(r0) {
        for (c, x) in row.iter().enumerate().skip(c0) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((r, c, ax));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

fn smallest_in_cross<T: Scalar>(a: &[Vec<T>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (r, row) in a.iter().enumerate().skip(t + 1) {
        if !row[t].is_zero() && row[t].abs() < best.2 {
            best = (r, t, row[t].abs());
        }
    }
    for (c, x) in a[t].iter().enumerate().skip(t + 1) {
        if !x.is_zero() && x.abs() < best.2 {
            best = (t, c, x.abs());
        }
    }
    (best.0, best.1)
}

fn swap_cols<T>(m: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn solve(text: &str) -> SolvabilityResult<BigInt> {
        System::<BigInt>::parse(text).unwrap().solve()
    }

    #[test]
    fn worked_systems() {
        assert_eq!(
            solve("1 x_b -3 y_b = 0\n1 x_b 1 y_b = -1\n").status,
            Status::Unsat
        );
        assert_eq!(solve("4 u = -1\n4 w = -1").status, Status::Unsat);
        let res = solve("x y = 0");
        assert!(res.is_sat());
        let w = res.witness.unwrap();
        assert_eq!(w["x"], BigInt::from(0));
        assert_eq!(w["y"], BigInt::from(0));
    }

    #[test]
    fn congruences() {
        assert!(solve("2 x = 1 mod 4").status == Status::Unsat);
        let res = solve("3 x = 2 mod 7\n1 x 1 y = 10");
        let w = res.witness.clone().unwrap();
        assert!(System::<BigInt>::parse("3 x = 2 mod 7\n1 x 1 y = 10")
            .unwrap()
            .is_satisfied_by(&w));
    }

    #[test]
    fn text_round_trip() {
        let sys = System::<i64>::parse("3 x_b -1 y_b = 0\n2 z = 1 mod 4\n").unwrap();
        assert_eq!(sys.to_string(), "3 x_b -1 y_b = 0\n2 z = 1 mod 4\n");
        assert_eq!(System::<i64>::parse(&sys.to_string()).unwrap(), sys);
        assert!(System::<i64>::parse("3 x = y z").is_err());
    }

    #[test]
    fn machine_integers_agree() {
        let text = "6 a 4 b = 2\n3 a -5 c = 7 mod 11\n";
        let big = System::<BigInt>::parse(text).unwrap().solve();
        let small = System::<i64>::parse(text).unwrap().solve();
        assert_eq!(big.status, small.status);
        assert!(System::<i64>::parse(text)
            .unwrap()
            .is_satisfied_by(&small.witness.unwrap()));
    }
}
