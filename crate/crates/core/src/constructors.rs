//! Group algebras and the N³-dimensional algebras H(ω, m).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{CycField, CycNum};
use crate::hopf::{Comult, Generator, HopfAlgebra, Structure};
use crate::linalg::{Mat, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid Cayley table: {0}")]
    InvalidCayley(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
}

/// A finite group by its multiplication table: `cayley[a][b]` is the index
/// of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub name: String,
    pub cayley: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub names: Vec<String>,
}

impl GroupPresentation {
    /// Validates that the table is a Latin square with a two-sided identity
    /// and two-sided inverses.
    pub fn new(name: impl Into<String>, cayley: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, ConstructError> {
        let n = cayley.len();
        let bad = |s: String| Err(ConstructError::InvalidCayley(s));
        if n == 0 {
            return bad("empty table".into());
        }
        for (a, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {a} has length {}", row.len()));
            }
            let mut seen = vec![false; n];
            for &c in row {
                if c >= n || std::mem::replace(&mut seen[c], true) {
                    return bad(format!("row {a} is not a permutation"));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &cayley {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return bad(format!("column {b} is not a permutation"));
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| cayley[e][a] == a && cayley[a][e] == a)) else {
            return bad("no identity element".into());
        };
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| cayley[a][b] == identity && cayley[b][a] == identity) {
                Some(b) => inverse[a] = b,
                None => return bad(format!("element {a} has no two-sided inverse")),
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        if names.len() != n {
            return bad("wrong number of element names".into());
        }
        Ok(GroupPresentation {
            name: name.into(),
            cayley,
            identity,
            inverse,
            names,
        })
    }

    /// Skips validation; meant for negative tests of the axiom checker.
    pub fn new_unchecked(name: impl Into<String>, cayley: Vec<Vec<usize>>, identity: usize, inverse: Vec<usize>) -> Self {
        let n = cayley.len();
        GroupPresentation {
            name: name.into(),
            cayley,
            identity,
            inverse,
            names: (0..n).map(|i| format!("g{i}")).collect(),
        }
    }

    /// `Z/n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Result<Self, ConstructError> {
        if !(1..=12).contains(&n) {
            return Err(ConstructError::InvalidParams(format!("Z/{n}: order must lie in 1..=12")));
        }
        let cayley = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|k| k.to_string()).collect();
        GroupPresentation::new(format!("Z/{n}"), cayley, Some(names))
    }

    /// Permutations of {0,1,2} in lexicographic order of their one-line
    /// notation; the product is composition, `(στ)(i) = σ(τ(i))`.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let cayley = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        GroupPresentation::new("S3", cayley, Some(names)).expect("S3 table")
    }

    /// Dihedral group of order 8: `s^a r^k` at index `4a + k`, with
    /// `r^4 = s^2 = 1` and `s r s = r^{-1}`.
    pub fn d4() -> Self {
        let mul = |i: usize, j: usize| {
            let (a, b) = (i / 4, i % 4);
            let (c, d) = (j / 4, j % 4);
            let rot = if c == 0 { b + d } else { 4 - b + d };
            ((a + c) % 2) * 4 + rot % 4
        };
        let cayley = (0..8).map(|i| (0..8).map(|j| mul(i, j)).collect()).collect();
        let names = (0..8)
            .map(|i| {
                let r = match i % 4 {
                    0 => String::new(),
                    1 => "r".into(),
                    k => format!("r^{k}"),
                };
                match (i / 4, r.is_empty()) {
                    (0, true) => "1".into(),
                    (0, false) => r,
                    (_, true) => "s".into(),
                    (_, false) => format!("s{r}"),
                }
            })
            .collect();
        GroupPresentation::new("D4", cayley, Some(names)).expect("D4 table")
    }

    /// Quaternion group: `1, i, j, k, -1, -i, -j, -k` at indices 0..8.
    pub fn q8() -> Self {
        // unit products among {1, i, j, k}: (sign, unit)
        const T: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mul = |a: usize, b: usize| {
            let (neg, u) = T[a % 4][b % 4];
            let sign = neg ^ (a >= 4) ^ (b >= 4);
            u + if sign { 4 } else { 0 }
        };
        let cayley = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
        GroupPresentation::new("Q8", cayley, Some(names)).expect("Q8 table")
    }

    /// Resolves `Z/n` (also `Zn`, `C<n>`), `S3`, `D4`, `Q8`.
    pub fn builtin(name: &str) -> Result<Self, ConstructError> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "s3" => return Ok(Self::s3()),
            "d4" => return Ok(Self::d4()),
            "q8" => return Ok(Self::q8()),
            _ => {}
        }
        let digits = lower
            .strip_prefix("z/")
            .or_else(|| lower.strip_prefix('z'))
            .or_else(|| lower.strip_prefix('c'));
        match digits.and_then(|d| d.parse::<usize>().ok()) {
            Some(n) => Self::cyclic(n),
            None => Err(ConstructError::UnknownGroup(name.to_string())),
        }
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn pow(&self, g: usize, n: i64) -> usize {
        let base = if n < 0 { self.inverse[g] } else { g };
        (0..n.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn centralizer_order(&self, g: usize) -> usize {
        (0..self.order()).filter(|&h| self.mul(g, h) == self.mul(h, g)).count()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.mul(self.mul(h, g), self.inverse[h])).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }
}

/// The group algebra kG over Q(ζ_N), basis = group elements in table order.
pub fn group_algebra(g: &GroupPresentation, cyclotomic_order: usize) -> HopfAlgebra {
    let field = CycField::new(cyclotomic_order.max(1));
    let n = g.order();
    let mult = (0..n * n)
        .map(|ij| SparseVec::unit(&field, g.cayley[ij / n][ij % n]))
        .collect();
    let comult = (0..n).map(|a| vec![(a, a, field.one())]).collect();
    let counit = vec![field.one(); n];
    let antipode = Mat::from_columns(
        &field,
        n,
        &(0..n).map(|a| SparseVec::unit(&field, g.inverse[a])).collect::<Vec<_>>(),
    );
    HopfAlgebra::from_tables(
        &field,
        format!("k{}", g.name),
        SparseVec::unit(&field, g.identity),
        mult,
        comult,
        counit,
        antipode,
        Some(g.names.clone()),
    )
    .expect("group tables are well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BookHopfParams {
    pub n: usize,
    pub m: usize,
    /// ω = ζ_N^s.
    pub s: usize,
}

impl BookHopfParams {
    pub fn new(n: usize, m: usize, s: usize) -> Result<Self, ConstructError> {
        let bad = |s: String| Err(ConstructError::InvalidParams(s));
        if n < 2 {
            return bad(format!("N = {n} must be at least 2"));
        }
        if m == 0 || m >= n {
            return bad(format!("m = {m} must satisfy 0 < m < N = {n}"));
        }
        if n.gcd(&m) != 1 {
            return bad(format!("gcd(N, m) = gcd({n}, {m}) is not 1"));
        }
        if n.gcd(&(s % n)) != 1 {
            return bad(format!("gcd(N, s) = gcd({n}, {s}) is not 1"));
        }
        Ok(BookHopfParams { n, m, s: s % n })
    }
}

/// Monomial multiplication rule of H(ω, m) on the basis `x^p y^q g^r`,
/// index `(p·N + q)·N + r`.
#[derive(Clone, Debug)]
pub(crate) struct BookRule {
    pub n: usize,
    pub m: usize,
    omega: Vec<CycNum>,
}

impl BookRule {
    fn new(p: BookHopfParams, field: &CycField) -> Self {
        let omega = (0..p.n).map(|e| field.zeta_pow((p.s * e) as i64)).collect();
        BookRule { n: p.n, m: p.m, omega }
    }

    pub fn index(&self, p: usize, q: usize, r: usize) -> usize {
        (p * self.n + q) * self.n + r
    }

    pub fn exps(&self, i: usize) -> (usize, usize, usize) {
        let n = self.n;
        (i / (n * n), (i / n) % n, i % n)
    }

    /// `ω^e` for `e` taken mod N.
    pub fn omega(&self, e: usize) -> &CycNum {
        &self.omega[e % self.n]
    }

    /// `x^p y^q g^r · x^p' y^q' g^r' = ω^e x^{p+p'} y^{q+q'} g^{r+r'}` with
    /// `e = mqp' + rp' − mrq'`; returns the product index and `e mod N`.
    pub fn mono_mul(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let n = self.n;
        let (p, q, r) = self.exps(i);
        let (p2, q2, r2) = self.exps(j);
        if p + p2 >= n || q + q2 >= n {
            return None;
        }
        let m = self.m;
        let e = (m * q * p2 + r * p2 + (n - m) * r * q2) % n;
        Some((self.index(p + p2, q + q2, (r + r2) % n), e))
    }

    pub fn monomial_name(&self, i: usize) -> String {
        let (p, q, r) = self.exps(i);
        let part = |v: &str, k: usize| match k {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{k}")),
        };
        let parts: Vec<String> = [part("x", p), part("y", q), part("g", r)].into_iter().flatten().collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Δ(x^p y^q g^r) = Δ(x)^p Δ(y)^q Δ(g)^r, expanded in H ⊗ H.
    pub fn comult(&self, i: usize) -> Comult {
        let (p, q, r) = self.exps(i);
        let (g, x, y) = (self.index(0, 0, 1), self.index(1, 0, 0), self.index(0, 1, 0));
        let gm = self.index(0, 0, self.m);
        let one = self.omega[0].clone();
        let dx = [(x, 0), (g, x)];
        let dy = [(y, 0), (gm, y)];
        let dg = [(g, g)];
        let mut cur: BTreeMap<(usize, usize), CycNum> = BTreeMap::new();
        cur.insert((0, 0), one);
        let factors = std::iter::repeat_n(&dx[..], p)
            .chain(std::iter::repeat_n(&dy[..], q))
            .chain(std::iter::repeat_n(&dg[..], r));
        for factor in factors {
            let mut next: BTreeMap<(usize, usize), CycNum> = BTreeMap::new();
            for ((a, b), c) in &cur {
                for &(u, v) in factor {
                    let (Some((au, e1)), Some((bv, e2))) = (self.mono_mul(*a, u), self.mono_mul(*b, v)) else {
                        continue;
                    };
                    let t = c * self.omega(e1 + e2);
                    match next.get_mut(&(au, bv)) {
                        Some(s) => *s = &*s + &t,
                        None => {
                            next.insert((au, bv), t);
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur.into_iter().map(|((a, b), c)| (a, b, c)).collect()
    }

    /// `S(x^p y^q g^r) = S(g)^r S(y)^q S(x)^p`, a signed monomial: returns
    /// `(index, odd sign, ω-exponent)`.
    fn antipode_monomial(&self, i: usize) -> (usize, bool, usize) {
        let n = self.n;
        let (p, q, r) = self.exps(i);
        let (sy, ey) = self
            .mono_mul(self.index(0, 0, n - self.m), self.index(0, 1, 0))
            .expect("g^-m y");
        let (sx, ex) = self
            .mono_mul(self.index(0, 0, n - 1), self.index(1, 0, 0))
            .expect("g^-1 x");
        let sg = self.index(0, 0, n - 1);
        let mut idx = 0;
        let mut e = 0;
        let letters = std::iter::repeat_n((sg, 0), r)
            .chain(std::iter::repeat_n((sy, ey), q))
            .chain(std::iter::repeat_n((sx, ex), p));
        for (l, el) in letters {
            let (k, ek) = self.mono_mul(idx, l).expect("antipode of a basis monomial is nonzero");
            idx = k;
            e = (e + el + ek) % n;
        }
        (idx, (p + q) % 2 == 1, e)
    }
}

/// H(ω, m): generated by `g, x, y` with `gx = ωxg`, `gy = ω^{-m}yg`,
/// `yx = ω^m xy`, `g^N = 1`, `x^N = y^N = 0`; `Δ(x) = x⊗1 + g⊗x`,
/// `Δ(y) = y⊗1 + g^m⊗y`, `Δ(g) = g⊗g`. Generators are listed as `g, x, y`.
pub fn book_hopf(params: BookHopfParams) -> HopfAlgebra {
    let n = params.n;
    let field = CycField::new(n);
    let rule = BookRule::new(params, &field);
    let d = n * n * n;
    let counit = (0..d)
        .map(|i| {
            let (p, q, _) = rule.exps(i);
            if p == 0 && q == 0 {
                field.one()
            } else {
                field.zero()
            }
        })
        .collect();
    let columns: Vec<SparseVec> = (0..d)
        .map(|i| {
            let (k, odd, e) = rule.antipode_monomial(i);
            let c = rule.omega(e).clone();
            SparseVec::from_sorted(vec![(k, if odd { -c } else { c })])
        })
        .collect();
    let antipode = Mat::from_columns(&field, d, &columns);
    let generators = vec![
        Generator::new("g", SparseVec::unit(&field, rule.index(0, 0, 1))),
        Generator::new("x", SparseVec::unit(&field, rule.index(1, 0, 0))),
        Generator::new("y", SparseVec::unit(&field, rule.index(0, 1, 0))),
    ];
    let words = (0..d)
        .map(|i| {
            let (p, q, r) = rule.exps(i);
            std::iter::repeat_n(1, p)
                .chain(std::iter::repeat_n(2, q))
                .chain(std::iter::repeat_n(0, r))
                .collect()
        })
        .collect();
    let label = if params.s == 1 {
        format!("H({n},{})", params.m)
    } else {
        format!("H({n},{},s={})", params.m, params.s)
    };
    HopfAlgebra::assemble(
        &field,
        label,
        SparseVec::unit(&field, 0),
        counit,
        antipode,
        Structure::Book {
            rule,
            comult: (0..d).map(|_| OnceLock::new()).collect(),
        },
        generators,
        words,
        None,
    )
}
