//! Integer polynomial equations and their decomposition into the atoms
//! `x = c`, `x = y + z` and `x = y * z`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Integer values of named variables.
pub type IntAssignment = BTreeMap<String, i64>;

/// `coef * vars[0] * vars[1] * ...`; repeated variables give powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coef: i64,
    pub vars: Vec<String>,
}

impl Monomial {
    fn eval(&self, values: &IntAssignment) -> Option<i128> {
        let mut acc = self.coef as i128;
        for x in &self.vars {
            acc = acc.checked_mul(*values.get(x)? as i128)?;
        }
        Some(acc)
    }
}

/// `lhs = rhs`, each side a sum of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyEquation {
    pub lhs: Vec<Monomial>,
    pub rhs: Vec<Monomial>,
}

impl PolyEquation {
    pub fn holds(&self, values: &IntAssignment) -> Option<bool> {
        let side = |ms: &[Monomial]| -> Option<i128> {
            ms.iter()
                .try_fold(0i128, |acc, m| acc.checked_add(m.eval(values)?))
        };
        Some(side(&self.lhs)? == side(&self.rhs)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H10Instance {
    /// Variables in order of first appearance.
    pub variables: Vec<String>,
    pub equations: Vec<PolyEquation>,
}

impl H10Instance {
    /// One equation per line, e.g. `1*x*y -1*z = 0`, `x^2 + 1 = z`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut equations = Vec::new();
        let mut variables: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = crate::presentation::strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let (l, r) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(i + 1, 1, "missing `=`"))?;
            let lhs = parse_side(l, i + 1, 1)?;
            let rhs = parse_side(r, i + 1, l.len() + 2)?;
            for m in lhs.iter().chain(&rhs) {
                for x in &m.vars {
                    if !variables.contains(x) {
                        variables.push(x.clone());
                    }
                }
            }
            equations.push(PolyEquation { lhs, rhs });
        }
        if equations.is_empty() {
            return Err(Error::parse(1, 1, "no equations"));
        }
        Ok(H10Instance {
            variables,
            equations,
        })
    }

    pub fn holds(&self, values: &IntAssignment) -> Result<bool> {
        if let Some(x) = self.variables.iter().find(|x| !values.contains_key(*x)) {
            return Err(Error::IncompleteAssignment(x.clone()));
        }
        Ok(self.equations.iter().all(|e| e.holds(values) == Some(true)))
    }
}

fn parse_side(text: &str, line: usize, offset: usize) -> Result<Vec<Monomial>> {
    let err = |col: usize, msg: String| Error::parse(line, offset + col, msg);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i == chars.len() {
            break;
        }
        let mut sign = 1i64;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(err(i, format!("expected `+` or `-`, found `{}`", chars[i])));
        }
        first = false;
        let mut m = Monomial {
            coef: sign,
            vars: Vec::new(),
        };
        loop {
            skip_ws(&mut i);
            let start = i;
            if i < chars.len() && chars[i].is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n: i64 = s
                    .parse()
                    .map_err(|_| err(start, format!("integer `{s}` out of range")))?;
                m.coef = m
                    .coef
                    .checked_mul(n)
                    .ok_or_else(|| err(start, "coefficient overflow".into()))?;
            } else if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let mut power = 1usize;
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    let ps = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[ps..i].iter().collect();
                    power = s
                        .parse()
                        .map_err(|_| err(ps, "expected a nonnegative exponent".into()))?;
                }
                m.vars.extend(std::iter::repeat_n(name, power));
            } else {
                let found = chars
                    .get(i)
                    .map_or("end of side".to_string(), |c| format!("`{c}`"));
                return Err(err(
                    i,
                    format!("expected a number or variable, found {found}"),
                ));
            }
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            } else {
                break;
            }
        }
        out.push(m);
    }
    Ok(out)
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &[Monomial]) -> fmt::Result {
    if side.is_empty() {
        return f.write_str("0");
    }
    for (i, m) in side.iter().enumerate() {
        match (i, m.coef < 0) {
            (0, _) => write!(f, "{}", m.coef)?,
            (_, true) => write!(f, " {}", m.coef)?,
            (_, false) => write!(f, " +{}", m.coef)?,
        }
        for x in &m.vars {
            write!(f, "*{x}")?;
        }
    }
    Ok(())
}

impl fmt::Display for H10Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            write_side(f, &e.lhs)?;
            f.write_str(" = ")?;
            write_side(f, &e.rhs)?;
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum H10Atom {
    /// `x = c`
    Const { x: String, c: i64 },
    /// `x = y + z`
    Add { x: String, y: String, z: String },
    /// `x = y * z`
    Mul { x: String, y: String, z: String },
}

impl H10Atom {
    pub fn target(&self) -> &str {
        match self {
            H10Atom::Const { x, .. } | H10Atom::Add { x, .. } | H10Atom::Mul { x, .. } => x,
        }
    }

    fn target_mut(&mut self) -> &mut String {
        match self {
            H10Atom::Const { x, .. } | H10Atom::Add { x, .. } | H10Atom::Mul { x, .. } => x,
        }
    }
}

impl fmt::Display for H10Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H10Atom::Const { x, c } => write!(f, "{x} = {c}"),
            H10Atom::Add { x, y, z } => write!(f, "{x} = {y} + {z}"),
            H10Atom::Mul { x, y, z } => write!(f, "{x} = {y} * {z}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomizedH10 {
    /// Source variables followed by fresh ones.
    pub variables: Vec<String>,
    pub source: Vec<String>,
    pub atoms: Vec<H10Atom>,
}

impl AtomizedH10 {
    /// Extends a solution of the source to all atom variables, checking every atom.
    pub fn extend(&self, values: &IntAssignment) -> Result<IntAssignment> {
        let mut all: IntAssignment = self
            .source
            .iter()
            .map(|x| {
                values
                    .get(x)
                    .map(|v| (x.clone(), *v))
                    .ok_or_else(|| Error::IncompleteAssignment(x.clone()))
            })
            .collect::<Result<_>>()?;
        for atom in &self.atoms {
            let value = match atom {
                H10Atom::Const { c, .. } => Some(*c),
                H10Atom::Add { y, z, .. } => all[y].checked_add(all[z]),
                H10Atom::Mul { y, z, .. } => all[y].checked_mul(all[z]),
            }
            .ok_or_else(|| Error::NotAnIntegerSolution(format!("overflow in `{atom}`")))?;
            let x = atom.target();
            match all.get(x) {
                Some(&v) if v != value => {
                    return Err(Error::NotAnIntegerSolution(format!(
                        "`{atom}` fails: {x} = {v}, expected {value}"
                    )));
                }
                Some(_) => {}
                None => {
                    all.insert(x.to_string(), value);
                }
            }
        }
        Ok(all)
    }

    pub fn holds(&self, values: &IntAssignment) -> bool {
        self.atoms.iter().all(|a| {
            let get = |x: &String| values.get(x).copied();
            let lhs = get(&a.target().to_string());
            let rhs = match a {
                H10Atom::Const { c, .. } => Some(*c),
                H10Atom::Add { y, z, .. } => get(y).zip(get(z)).and_then(|(y, z)| y.checked_add(z)),
                H10Atom::Mul { y, z, .. } => get(y).zip(get(z)).and_then(|(y, z)| y.checked_mul(z)),
            };
            lhs.is_some() && lhs == rhs
        })
    }
}

struct Atomizer {
    variables: Vec<String>,
    atoms: Vec<H10Atom>,
    next: usize,
    /// Index of the atom defining each fresh variable.
    defined_by: BTreeMap<String, usize>,
}

impl Atomizer {
    fn fresh(&mut self) -> String {
        loop {
            let name = format!("_t{}", self.next);
            self.next += 1;
            if !self.variables.contains(&name) {
                self.variables.push(name.clone());
                return name;
            }
        }
    }

    fn define(&mut self, atom_for: impl FnOnce(String) -> H10Atom) -> String {
        let x = self.fresh();
        self.defined_by.insert(x.clone(), self.atoms.len());
        self.atoms.push(atom_for(x.clone()));
        x
    }

    fn constant(&mut self, c: i64) -> String {
        self.define(|x| H10Atom::Const { x, c })
    }

    fn monomial(&mut self, m: &Monomial) -> String {
        let mut factors = m.vars.iter().cloned();
        let Some(mut acc) = factors.next() else {
            return self.constant(m.coef);
        };
        for v in factors {
            let y = acc;
            acc = self.define(|x| H10Atom::Mul { x, y, z: v });
        }
        if m.coef != 1 {
            let k = self.constant(m.coef);
            let z = acc;
            acc = self.define(|x| H10Atom::Mul { x, y: k, z });
        }
        acc
    }

    fn side(&mut self, ms: &[Monomial]) -> String {
        let mut iter = ms.iter();
        let Some(first) = iter.next() else {
            return self.constant(0);
        };
        let mut acc = self.monomial(first);
        for m in iter {
            let z = self.monomial(m);
            let y = acc;
            acc = self.define(|x| H10Atom::Add { x, y, z });
        }
        acc
    }

    /// Merges `from` into `into` by retargeting the atom that defines `from`.
    fn retarget(&mut self, from: &str, into: &str) {
        let idx = self
            .defined_by
            .remove(from)
            .expect("fresh variable has a defining atom");
        *self.atoms[idx].target_mut() = into.to_string();
        self.variables.retain(|x| x != from);
    }
}

/// Decomposes every equation left to right into atoms.
pub fn atomize(h: &H10Instance) -> AtomizedH10 {
    let mut a = Atomizer {
        variables: h.variables.clone(),
        atoms: Vec::new(),
        next: 0,
        defined_by: BTreeMap::new(),
    };
    for e in &h.equations {
        let l = a.side(&e.lhs);
        let r = a.side(&e.rhs);
        if a.defined_by.contains_key(&r) {
            a.retarget(&r, &l);
        } else if a.defined_by.contains_key(&l) {
            a.retarget(&l, &r);
        } else {
            let zero = a.constant(0);
            a.atoms.push(H10Atom::Add {
                x: l,
                y: r,
                z: zero,
            });
        }
    }
    AtomizedH10 {
        variables: a.variables,
        source: h.variables.clone(),
        atoms: a.atoms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(text: &str) -> Vec<String> {
        atomize(&H10Instance::parse(text).unwrap())
            .atoms
            .iter()
            .map(|a| a.to_string())
            .collect()
    }

    #[test]
    fn single_atoms() {
        assert_eq!(atoms("x*y = 6"), ["_t0 = x * y", "_t0 = 6"]);
        assert_eq!(atoms("x + y = 5"), ["_t0 = x + y", "_t0 = 5"]);
        assert_eq!(atoms("x*y = z"), ["z = x * y"]);
        assert_eq!(
            atoms("x^2 + 1 = z"),
            ["_t0 = x * x", "_t1 = 1", "z = _t0 + _t1"]
        );
        assert_eq!(atoms("x = y"), ["_t0 = 0", "x = y + _t0"]);
    }

    #[test]
    fn expanded_form() {
        let h = H10Instance::parse("1*x*y -1*z = 0").unwrap();
        assert_eq!(h.to_string(), "1*x*y -1*z = 0\n");
        let at = atomize(&h);
        let mut v = IntAssignment::new();
        v.insert("x".into(), 2);
        v.insert("y".into(), 3);
        v.insert("z".into(), 6);
        assert!(h.holds(&v).unwrap());
        let full = at.extend(&v).unwrap();
        assert!(at.holds(&full));
        v.insert("z".into(), 5);
        assert!(at.extend(&v).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(H10Instance::parse("x * = 2").is_err());
        assert!(H10Instance::parse("x y = 2").is_err());
        assert!(H10Instance::parse("").is_err());
    }
}
