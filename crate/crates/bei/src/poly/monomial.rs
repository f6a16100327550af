use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A monomial as a dense exponent vector. In the standard ring of a graph on
/// `n` vertices positions `0..n` are `x_1..x_n` and `n..2n` are `y_1..y_n`.
/// Elimination rings prepend auxiliary variables in front.
#[derive(Clone, Debug, Eq)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn var(idx: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u16 {
        self.exps[idx]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn mul_var(&self, idx: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[idx] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let names = var_names(self.exps.len());
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Variable naming: even arity is the standard `x_1..x_n, y_1..y_n` ring; odd
/// arity is an elimination ring with `t` in front.
pub(crate) fn var_names(nvars: usize) -> impl Fn(usize) -> String {
    let aux = nvars % 2;
    let n = (nvars - aux) / 2;
    move |i: usize| {
        if i < aux {
            "t".to_string()
        } else if i - aux < n {
            format!("x{}", i - aux + 1)
        } else {
            format!("y{}", i - aux - n + 1)
        }
    }
}

/// Monomial orders. `Block { elim }` is an elimination order in which the
/// first `elim` variables dominate; ties are broken by lex on the remainder.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Block { elim: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => {
                a.degree.cmp(&b.degree).then_with(|| {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        match x.cmp(y) {
                            Ordering::Equal => continue,
                            // smaller exponent in the last differing slot wins
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Block { elim } => {
                let da: u32 = a.exps[..*elim].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..*elim].iter().map(|&e| e as u32).sum();
                da.cmp(&db)
                    .then_with(|| a.exps[..*elim].cmp(&b.exps[..*elim]))
                    .then_with(|| a.exps[*elim..].cmp(&b.exps[*elim..]))
            }
        }
    }
}
