//! Finite subgroups of GL(n, ℤ), conjugacy classes and character tables.
//!
//! Character tables are computed by Dixon's method: common eigenvectors of
//! the class-sum multiplication matrices over F_p, lifted to ℤ[ζ_e] through
//! the eigenvalue multiplicities of each element.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, ScaledCyclotomic};
use crate::error::{Error, Result};
use crate::linalg;

/// A square integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("matrix with {n} rows is not square")));
        }
        Ok(Self { n, data: rows.concat() })
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Self { n, data: vec![0; n * n] };
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.data[(off + i) * n + off + j] = b.get(i, j);
                }
            }
            off += b.n;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Self { n, data }
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.data[i * self.n + j] * v[j]).sum()).collect()
    }

    pub fn det(&self) -> BigInt {
        linalg::int_det(&self.rows())
    }

    /// Inverse over ℤ, or `None` unless det = ±1.
    pub fn inverse(&self) -> Option<Self> {
        let q: linalg::RatMatrix = self.rows().iter().map(|r| r.iter().map(|&x| linalg::rat(x)).collect()).collect();
        let inv = linalg::inverse(&q)?;
        let mut data = Vec::with_capacity(self.n * self.n);
        for r in inv {
            for x in r {
                if !x.is_integer() {
                    return None;
                }
                data.push(x.to_integer().to_i64()?);
            }
        }
        Some(Self { n: self.n, data })
    }

    /// Whether 1 is an eigenvalue, i.e. det(γ − I) = 0.
    pub fn has_eigenvalue_one(&self) -> bool {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] -= 1;
        }
        m.det().is_zero()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// A finite matrix group with its conjugacy classes. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    n: usize,
    gens: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Closes the generators under multiplication, failing past `cap` elements.
pub fn generate_group(gens: &[IntMatrix], cap: usize) -> Result<GammaGroup> {
    let n = gens.first().map_or(0, |g| g.n);
    if gens.iter().any(|g| g.n != n) {
        return Err(Error::ShapeMismatch("generators of different sizes".into()));
    }
    for g in gens {
        let d = g.det();
        if d.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(d.to_i64().unwrap_or(i64::MAX)));
        }
    }
    let id = IntMatrix::identity(n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut q = VecDeque::from([0usize]);
    while let Some(i) = q.pop_front() {
        for g in gens {
            let p = elements[i].mul(g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(p.clone(), elements.len());
                q.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    GammaGroup::from_elements(n, gens.to_vec(), elements, index)
}

impl GammaGroup {
    fn from_elements(n: usize, gens: Vec<IntMatrix>, elements: Vec<IntMatrix>, index: HashMap<IntMatrix, usize>) -> Result<Self> {
        let k = elements.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let p = elements[i].mul(&elements[j]);
                let idx = *index
                    .get(&p)
                    .ok_or_else(|| Error::NotSubgroup("element set is not closed".into()))?;
                table[i * k + j] = idx as u32;
            }
        }
        let mut inverse = vec![0; k];
        let mut orders = vec![0; k];
        for i in 0..k {
            let mut cur = i;
            let mut o = 1;
            let mut prev = 0;
            while cur != 0 {
                prev = cur;
                cur = table[cur * k + i] as usize;
                o += 1;
            }
            orders[i] = o;
            inverse[i] = if i == 0 { 0 } else { prev };
        }
        let mut g = Self {
            n,
            gens,
            elements,
            index,
            table,
            inverse,
            orders,
            classes: Vec::new(),
            class_of: vec![usize::MAX; k],
        };
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let k = self.elements.len();
        for start in 0..k {
            if self.class_of[start] != usize::MAX {
                continue;
            }
            let c = self.classes.len();
            let mut class = vec![start];
            self.class_of[start] = c;
            let mut q = VecDeque::from([start]);
            while let Some(x) = q.pop_front() {
                for g in 0..k {
                    let y = self.mul(self.mul(g, x), self.inverse[g]);
                    if self.class_of[y] == usize::MAX {
                        self.class_of[y] = c;
                        class.push(y);
                        q.push_back(y);
                    }
                }
            }
            class.sort_unstable();
            self.classes.push(class);
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[IntMatrix] {
        &self.gens
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.elements.len() + j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn pow(&self, i: usize, e: u64) -> usize {
        (0..e % self.orders[i]).fold(0, |acc, _| self.mul(acc, i))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, b| a.lcm(b))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Closure of a set of elements, as sorted indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = h.iter().copied().collect();
        set.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// `g H g⁻¹`, sorted.
    pub fn conjugate_subgroup(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = h.iter().map(|&x| self.mul(self.mul(g, x), self.inverse[g])).collect();
        out.sort_unstable();
        out
    }
}

/// True iff det(γ − I) ≠ 0 for every γ ≠ 1.
pub fn no_eigenvalue_one(g: &GammaGroup) -> bool {
    g.elements.iter().skip(1).all(|m| !m.has_eigenvalue_one())
}

/// Irreducible characters, one row per irrep, one column per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    conductor: u64,
    class_sizes: Vec<u64>,
    rows: Vec<Vec<Cyclotomic>>,
    dims: Vec<u64>,
}

impl CharacterTable {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    /// Both orthogonality relations, exactly; also Σ d² = |Γ|.
    pub fn check_orthogonality(&self) -> Result<()> {
        let m = self.conductor;
        let order = self.order();
        let r = self.class_sizes.len();
        if self.rows.len() != r {
            return Err(Error::CharacterTable(format!("{} rows for {r} classes", self.rows.len())));
        }
        if self.dims.iter().map(|d| d * d).sum::<u64>() != order {
            return Err(Error::CharacterTable("sum of squared degrees differs from the order".into()));
        }
        for i in 0..r {
            for j in 0..r {
                let mut s = Cyclotomic::zero(m);
                for c in 0..r {
                    s = &s + &(&self.rows[i][c] * &self.rows[j][c].conj()).scale(&BigInt::from(self.class_sizes[c]));
                }
                let want = if i == j { order } else { 0 };
                if s != Cyclotomic::from_int(m, want) {
                    return Err(Error::CharacterTable(format!("rows {i},{j} pair to {s}")));
                }
            }
        }
        for c in 0..r {
            for d in 0..r {
                let mut s = Cyclotomic::zero(m);
                for row in &self.rows {
                    s = &s + &(&row[c] * &row[d].conj());
                }
                let want = if c == d { order / self.class_sizes[c] } else { 0 };
                if s != Cyclotomic::from_int(m, want) {
                    return Err(Error::CharacterTable(format!("columns {c},{d} pair to {s}")));
                }
            }
        }
        Ok(())
    }

    /// Reads a table from TOML text and checks it against the group.
    ///
    /// ```toml
    /// conductor = 4
    /// class_sizes = [1, 1, 2, 2, 2]
    /// rows = [[[1], [1], [1], [1], [1]], ...]   # entries are polynomials in ζ
    /// ```
    pub fn from_toml(text: &str, g: &GammaGroup) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            conductor: u64,
            class_sizes: Vec<u64>,
            rows: Vec<Vec<Vec<i64>>>,
        }
        let doc: Doc = toml::from_str(text).map_err(|e| Error::CharacterTable(e.to_string()))?;
        let sizes: Vec<u64> = g.classes.iter().map(|c| c.len() as u64).collect();
        if doc.class_sizes != sizes {
            return Err(Error::CharacterTable(format!("class sizes {:?} do not match {sizes:?}", doc.class_sizes)));
        }
        let m = doc.conductor;
        let mut rows = Vec::new();
        let mut dims = Vec::new();
        for r in doc.rows {
            let row: Vec<Cyclotomic> = r
                .into_iter()
                .map(|p| Cyclotomic::from_poly(m, p.into_iter().map(BigInt::from).collect()))
                .collect();
            let d = row.first().ok_or_else(|| Error::CharacterTable("empty row".into()))?.to_integer()?;
            dims.push(d.to_u64().ok_or_else(|| Error::CharacterTable("nonpositive degree".into()))?);
            rows.push(row);
        }
        let t = Self { conductor: m, class_sizes: doc.class_sizes, rows, dims };
        t.check_orthogonality()?;
        Ok(t)
    }

    /// χ(x) for a group element index.
    pub fn value(&self, g: &GammaGroup, row: usize, x: usize) -> &Cyclotomic {
        &self.rows[row][g.class_of(x)]
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime p ≡ 1 mod e with p > 2√|Γ|.
pub fn dixon_prime(exponent: u64, order: u64) -> Result<u64> {
    let limit = 1u64 << 31;
    let mut p = exponent + 1;
    while p < limit {
        if p * p > 4 * order && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::PrimeSearch(format!("no prime below 2^31 for exponent {exponent}")))
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let v = mulm(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - v) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn kernel(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, Vec::len);
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

fn char_poly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    // similarity reduction to upper Hessenberg form
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mulm(h[i][m - 1], t, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = mulm(u, h[m][j], p);
                h[i][j] = (h[i][j] + p - v) % p;
            }
            for row in h.iter_mut() {
                let v = mulm(u, row[i], p);
                row[m] = (row[m] + v) % p;
            }
        }
    }
    // p_{k+1} = (x − h_kk) p_k − Σ_{i<k} h_ik · Π_{j=i+1..k} h_{j,j−1} · p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let pk = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in pk.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mulm(h[k][k], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mulm(prod, h[i + 1][i], p);
            let f = mulm(h[i][k], prod, p);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - mulm(f, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_poly(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &k| (mulm(acc, x, p) + k) % p)
}

/// Dixon's algorithm.
pub fn character_table(g: &GammaGroup) -> Result<CharacterTable> {
    let order = g.order() as u64;
    if order > 10_000 {
        return Err(Error::Unsupported(format!("character table of a group of order {order}")));
    }
    let e = g.exponent();
    let p = dixon_prime(e, order)?;
    let r = g.classes.len();
    let sizes: Vec<u64> = g.classes.iter().map(|c| c.len() as u64).collect();
    let reps: Vec<usize> = g.classes.iter().map(|c| c[0]).collect();

    // (M_j)_{k,l} = #{x ∈ C_j : x⁻¹ g_l ∈ C_k}
    let mats: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|j| {
            let mut m = vec![vec![0u64; r]; r];
            for (l, &gl) in reps.iter().enumerate() {
                for &x in &g.classes[j] {
                    let k = g.class_of(g.mul(g.inv(x), gl));
                    m[k][l] += 1;
                }
            }
            // M_j ω = ω_j ω for ω = (ω_l)
            m.into_iter().map(|row| row.into_iter().map(|x| x % p).collect()).collect()
        })
        .collect();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()];
    for mj in &mats {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let mut b = basis;
            let pivots = rref(&mut b, p);
            let d = b.len();
            let images: Vec<Vec<u64>> = b
                .iter()
                .map(|v| (0..r).map(|k| (0..r).fold(0, |acc, l| (acc + mulm(mj[k][l], v[l], p)) % p)).collect())
                .collect();
            // R[k][l] = coefficient of b_k in M b_l
            let rm: Vec<Vec<u64>> = (0..d).map(|k| (0..d).map(|l| images[l][pivots[k]]).collect()).collect();
            let cp = char_poly(&rm, p);
            for lam in (0..p).filter(|&x| eval_poly(&cp, x, p) == 0) {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|k| (0..d).map(|l| if k == l { (rm[k][l] + p - lam) % p } else { rm[k][l] }).collect())
                    .collect();
                let ker = kernel(shifted, p);
                let vecs: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| (0..r).map(|i| (0..d).fold(0, |acc, k| (acc + mulm(c[k], b[k][i], p)) % p)).collect())
                    .collect();
                if !vecs.is_empty() {
                    next.push(vecs);
                }
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::CharacterTable(format!("eigenspace splitting produced {} spaces", spaces.len())));
    }

    let inv_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();
    let gen = {
        let fs = prime_factors(p - 1);
        (2..p).find(|&a| fs.iter().all(|&q| pow_mod(a, (p - 1) / q, p) != 1)).expect("primitive root")
    };
    let z = pow_mod(gen, (p - 1) / e, p);
    let order_mod = order % p;
    let mut rows = Vec::new();
    let mut dims = Vec::new();
    for s in spaces {
        let v = &s[0];
        let norm = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mulm(x, norm, p)).collect();
        let mut denom = 0u64;
        for l in 0..r {
            denom = (denom + mulm(mulm(omega[l], omega[inv_class[l]], p), inv_mod(sizes[l] % p, p), p)) % p;
        }
        let d2 = mulm(order_mod, inv_mod(denom, p), p);
        let d = (1..=(order as f64).sqrt() as u64 + 1)
            .find(|&d| (d * d) % p == d2)
            .ok_or_else(|| Error::CharacterTable("no degree matches the norm".into()))?;
        let chi: Vec<u64> = (0..r).map(|l| mulm(mulm(d % p, omega[l], p), inv_mod(sizes[l] % p, p), p)).collect();
        let mut row = Vec::with_capacity(r);
        for &x in &reps {
            let o = g.element_order(x);
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut poly = vec![BigInt::zero(); e as usize];
            for j in 0..o {
                let mut mj = 0u64;
                for t in 0..o {
                    let val = chi[g.class_of(g.pow(x, t))];
                    let w = pow_mod(zo, (o - (j * t) % o) % o, p);
                    mj = (mj + mulm(val, w, p)) % p;
                }
                mj = mulm(mj, inv_o, p);
                if mj > d {
                    return Err(Error::CharacterTable(format!("eigenvalue multiplicity {mj} exceeds degree {d}")));
                }
                poly[(j * (e / o)) as usize] += BigInt::from(mj);
            }
            row.push(Cyclotomic::from_poly(e, poly));
        }
        rows.push(row);
        dims.push(d);
    }
    let mut order_idx: Vec<usize> = (0..r).collect();
    let key = |i: usize| {
        let trivial = rows[i].iter().all(|c| *c == Cyclotomic::from_int(e, 1));
        (!trivial, dims[i], rows[i].iter().map(|c| c.coeffs().to_vec()).collect::<Vec<_>>())
    };
    order_idx.sort_by_key(|&i| key(i));
    let table = CharacterTable {
        conductor: e,
        class_sizes: sizes,
        rows: order_idx.iter().map(|&i| rows[i].clone()).collect(),
        dims: order_idx.iter().map(|&i| dims[i]).collect(),
    };
    table.check_orthogonality()?;
    Ok(table)
}

/// `(1/|H|) Σ_{h∈H} χ(h)` for a subgroup H given by element indices.
pub fn subgroup_fixed_dim(g: &GammaGroup, h: &[usize], table: &CharacterTable, row: usize) -> Result<u64> {
    if !g.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{} elements not closed under products", h.len())));
    }
    let mut s = Cyclotomic::zero(table.conductor);
    for &x in h {
        s = &s + table.value(g, row, x);
    }
    let v = ScaledCyclotomic::new(s, h.len() as u64).to_integer()?;
    if v.is_negative() {
        return Err(Error::NotIntegral(format!("negative fixed dimension {v}")));
    }
    v.to_u64().ok_or(Error::Overflow("fixed dimension"))
}

/// The Example-5 generators a = diag(J₁, −J₁) and b = J₂.
pub fn q8_generators() -> (IntMatrix, IntMatrix) {
    let j1 = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
    let a = IntMatrix::block_diag(&[&j1, &j1.neg()]);
    let b = IntMatrix::from_rows(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]]).unwrap();
    (a, b)
}
