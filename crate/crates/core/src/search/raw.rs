//! Raw mod-p arithmetic for the search engine: candidate tables, ground
//! constraint instances and small linear solvers.
//!
//! Everything here works on u32 residues for speed. Found models are
//! re-verified through the exact Scalar-based modules, so this layer never
//! has the last word on soundness.

/// A full or partial candidate: the twisting matrix and product tensor of a
/// dim-n carrier over GF(p). Variables are ordered alpha entries first
/// (row-major), then product entries in lexicographic (i, j, k) order.
#[derive(Clone, Debug)]
pub struct State {
    pub n: usize,
    pub p: u32,
    /// n*n entries, alpha[r*n + c] is the coefficient of e_r in alpha(e_c).
    pub alpha: Vec<u32>,
    /// n^3 entries, sc[(i*n + j)*n + k] is the coefficient of e_k in e_i * e_j.
    pub sc: Vec<u32>,
}

impl State {
    pub fn new(n: usize, p: u32) -> State {
        State {
            n,
            p,
            alpha: vec![0; n * n],
            sc: vec![0; n * n * n],
        }
    }

    #[cfg(test)]
    pub fn total_vars(&self) -> usize {
        self.n * self.n + self.n * self.n * self.n
    }

    #[inline]
    pub fn set_var(&mut self, var: usize, value: u32) {
        let nn = self.n * self.n;
        if var < nn {
            self.alpha[var] = value;
        } else {
            self.sc[var - nn] = value;
        }
    }

    #[inline]
    fn a(&self, r: usize, c: usize) -> u64 {
        self.alpha[r * self.n + c] as u64
    }

    #[inline]
    fn t(&self, i: usize, j: usize, k: usize) -> u64 {
        self.sc[(i * self.n + j) * self.n + k] as u64
    }
}

/// Variable index of an alpha entry.
pub fn alpha_var(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

/// Variable index of a product tensor entry.
pub fn sc_var(n: usize, i: usize, j: usize, k: usize) -> usize {
    n * n + (i * n + j) * n + k
}

/// One scalar equation over the candidate variables: a ground instance of a
/// universally quantified constraint at a basis tuple and output coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ground {
    /// alpha(e_i)*(e_j*e_k) = (e_i*e_j)*alpha(e_k), coordinate l
    HomAssoc { i: u8, j: u8, k: u8, l: u8 },
    /// (e_i*e_j)*e_k = e_i*(e_j*e_k), coordinate l
    Assoc { i: u8, j: u8, k: u8, l: u8 },
    /// e_i*e_j = e_j*e_i, coordinate l
    Commut { i: u8, j: u8, l: u8 },
    /// e_u*e_j = e_j, coordinate l
    UnitRow { u: u8, j: u8, l: u8 },
    /// e_j*e_u = e_j, coordinate l
    UnitCol { u: u8, j: u8, l: u8 },
    /// alpha(e_i)*e_j = e_i*alpha(e_j), coordinate l
    AlphaSwap { i: u8, j: u8, l: u8 },
    /// e_i*alpha(e_u) = alpha(e_i), coordinate l (e_u the designated unit)
    AlphaViaUnit { u: u8, i: u8, l: u8 },
    /// alpha(e_i*e_j) = e_i*alpha(e_j), coordinate l
    AlphaProduct { i: u8, j: u8, l: u8 },
    /// alpha(e_i)*(e_j*e_k) = (alpha(e_i)*e_j)*e_k, coordinate l
    ImageAssocLeft { i: u8, j: u8, k: u8, l: u8 },
    /// e_i*(alpha(e_j)*e_k) = (e_i*alpha(e_j))*e_k, coordinate l
    ImageAssocMiddle { i: u8, j: u8, k: u8, l: u8 },
    /// e_i*(e_j*alpha(e_k)) = (e_i*e_j)*alpha(e_k), coordinate l
    ImageAssocRight { i: u8, j: u8, k: u8, l: u8 },
    /// alpha(e_i*(e_j*e_k)) = alpha((e_i*e_j)*e_k), coordinate l
    AlphaAssociator { i: u8, j: u8, k: u8, l: u8 },
}

impl Ground {
    /// Evaluates the equation on a state where every involved variable is
    /// determined. True means satisfied.
    pub fn holds(&self, s: &State) -> bool {
        let n = s.n;
        let p = s.p as u64;
        match *self {
            Ground::HomAssoc { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for m in 0..n {
                    for q in 0..n {
                        lhs += s.a(m, i) * s.t(j, k, q) % p * s.t(m, q, l) % p;
                        rhs += s.t(i, j, q) * s.a(m, k) % p * s.t(q, m, l) % p;
                    }
                }
                lhs % p == rhs % p
            }
            Ground::Assoc { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for q in 0..n {
                    lhs += s.t(i, j, q) * s.t(q, k, l) % p;
                    rhs += s.t(j, k, q) * s.t(i, q, l) % p;
                }
                lhs % p == rhs % p
            }
            Ground::Commut { i, j, l } => {
                s.t(i as usize, j as usize, l as usize) == s.t(j as usize, i as usize, l as usize)
            }
            Ground::UnitRow { u, j, l } => {
                let want = u64::from(j == l);
                s.t(u as usize, j as usize, l as usize) == want
            }
            Ground::UnitCol { u, j, l } => {
                let want = u64::from(j == l);
                s.t(j as usize, u as usize, l as usize) == want
            }
            Ground::AlphaSwap { i, j, l } => {
                let (i, j, l) = (i as usize, j as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for m in 0..n {
                    lhs += s.a(m, i) * s.t(m, j, l) % p;
                    rhs += s.a(m, j) * s.t(i, m, l) % p;
                }
                lhs % p == rhs % p
            }
            Ground::AlphaViaUnit { u, i, l } => {
                let (u, i, l) = (u as usize, i as usize, l as usize);
                let mut lhs = 0u64;
                for m in 0..n {
                    lhs += s.a(m, u) * s.t(i, m, l) % p;
                }
                lhs % p == s.a(l, i) % p
            }
            Ground::AlphaProduct { i, j, l } => {
                let (i, j, l) = (i as usize, j as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for q in 0..n {
                    lhs += s.t(i, j, q) * s.a(l, q) % p;
                    rhs += s.a(q, j) * s.t(i, q, l) % p;
                }
                lhs % p == rhs % p
            }
            Ground::ImageAssocLeft { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for m in 0..n {
                    for q in 0..n {
                        lhs += s.a(m, i) * s.t(j, k, q) % p * s.t(m, q, l) % p;
                        rhs += s.a(m, i) * s.t(m, j, q) % p * s.t(q, k, l) % p;
                    }
                }
                lhs % p == rhs % p
            }
            Ground::ImageAssocMiddle { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for m in 0..n {
                    for q in 0..n {
                        lhs += s.a(m, j) * s.t(m, k, q) % p * s.t(i, q, l) % p;
                        rhs += s.a(m, j) * s.t(i, m, q) % p * s.t(q, k, l) % p;
                    }
                }
                lhs % p == rhs % p
            }
            Ground::ImageAssocRight { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for m in 0..n {
                    for q in 0..n {
                        lhs += s.a(m, k) * s.t(j, m, q) % p * s.t(i, q, l) % p;
                        rhs += s.t(i, j, q) * s.a(m, k) % p * s.t(q, m, l) % p;
                    }
                }
                lhs % p == rhs % p
            }
            Ground::AlphaAssociator { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                let mut lhs = 0u64;
                let mut rhs = 0u64;
                for q in 0..n {
                    for r in 0..n {
                        lhs += s.t(j, k, q) * s.t(i, q, r) % p * s.a(l, r) % p;
                        rhs += s.t(i, j, q) * s.t(q, k, r) % p * s.a(l, r) % p;
                    }
                }
                lhs % p == rhs % p
            }
        }
    }

    /// Largest variable index the equation reads; once assignment has
    /// passed it in canonical order, the instance is ground.
    pub fn trigger(&self, n: usize) -> usize {
        let vars = self.vars(n);
        vars.into_iter().max().expect("instances read variables")
    }

    /// Every variable index the equation reads (over-approximation is safe,
    /// reading an unlisted variable is not).
    pub fn vars(&self, n: usize) -> Vec<usize> {
        fn alpha_col(out: &mut Vec<usize>, n: usize, c: usize) {
            for r in 0..n {
                out.push(alpha_var(n, r, c));
            }
        }
        fn alpha_row(out: &mut Vec<usize>, n: usize, r: usize) {
            for c in 0..n {
                out.push(alpha_var(n, r, c));
            }
        }
        fn sc_row(out: &mut Vec<usize>, n: usize, i: usize, j: usize) {
            for q in 0..n {
                out.push(sc_var(n, i, j, q));
            }
        }
        fn sc_slice(out: &mut Vec<usize>, n: usize, l: usize) {
            for m in 0..n {
                for q in 0..n {
                    out.push(sc_var(n, m, q, l));
                }
            }
        }

        let mut out = Vec::new();
        match *self {
            Ground::HomAssoc { i, j, k, l } => {
                alpha_col(&mut out, n, i as usize);
                alpha_col(&mut out, n, k as usize);
                sc_row(&mut out, n, j as usize, k as usize);
                sc_row(&mut out, n, i as usize, j as usize);
                sc_slice(&mut out, n, l as usize);
            }
            Ground::Assoc { i, j, k, l } => {
                let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
                sc_row(&mut out, n, i, j);
                sc_row(&mut out, n, j, k);
                for q in 0..n {
                    out.push(sc_var(n, q, k, l));
                    out.push(sc_var(n, i, q, l));
                }
            }
            Ground::Commut { i, j, l } => {
                out.push(sc_var(n, i as usize, j as usize, l as usize));
                out.push(sc_var(n, j as usize, i as usize, l as usize));
            }
            Ground::UnitRow { u, j, l } => {
                out.push(sc_var(n, u as usize, j as usize, l as usize));
            }
            Ground::UnitCol { u, j, l } => {
                out.push(sc_var(n, j as usize, u as usize, l as usize));
            }
            Ground::AlphaSwap { i, j, l } => {
                alpha_col(&mut out, n, i as usize);
                alpha_col(&mut out, n, j as usize);
                for m in 0..n {
                    out.push(sc_var(n, m, j as usize, l as usize));
                    out.push(sc_var(n, i as usize, m, l as usize));
                }
            }
            Ground::AlphaViaUnit { u, i, l } => {
                alpha_col(&mut out, n, u as usize);
                alpha_col(&mut out, n, i as usize);
                for m in 0..n {
                    out.push(sc_var(n, i as usize, m, l as usize));
                }
            }
            Ground::AlphaProduct { i, j, l } => {
                alpha_col(&mut out, n, j as usize);
                alpha_row(&mut out, n, l as usize);
                sc_row(&mut out, n, i as usize, j as usize);
                for q in 0..n {
                    out.push(sc_var(n, i as usize, q, l as usize));
                }
            }
            Ground::ImageAssocLeft { i, j, k, l } => {
                alpha_col(&mut out, n, i as usize);
                sc_row(&mut out, n, j as usize, k as usize);
                for m in 0..n {
                    sc_row(&mut out, n, m, j as usize);
                }
                sc_slice(&mut out, n, l as usize);
            }
            Ground::ImageAssocMiddle { i, j, k, l } => {
                alpha_col(&mut out, n, j as usize);
                for m in 0..n {
                    sc_row(&mut out, n, m, k as usize);
                    sc_row(&mut out, n, i as usize, m);
                }
                sc_slice(&mut out, n, l as usize);
            }
            Ground::ImageAssocRight { i, j, k, l } => {
                alpha_col(&mut out, n, k as usize);
                for m in 0..n {
                    sc_row(&mut out, n, j as usize, m);
                }
                sc_row(&mut out, n, i as usize, j as usize);
                sc_slice(&mut out, n, l as usize);
            }
            Ground::AlphaAssociator { i, j, k, l } => {
                alpha_row(&mut out, n, l as usize);
                sc_row(&mut out, n, j as usize, k as usize);
                sc_row(&mut out, n, i as usize, j as usize);
                for q in 0..n {
                    sc_row(&mut out, n, i as usize, q);
                    sc_row(&mut out, n, q, k as usize);
                }
            }
        }
        out
    }
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime, a nonzero
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Row-reduces a rows x cols matrix in place; returns the pivot columns.
fn row_reduce(m: &mut [u32], rows: usize, cols: usize, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(r) = (pivot_row..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        if r != pivot_row {
            for c in 0..cols {
                m.swap(r * cols + c, pivot_row * cols + c);
            }
        }
        let inv = mod_inv(m[pivot_row * cols + col], p) as u64;
        for c in col..cols {
            m[pivot_row * cols + c] = (m[pivot_row * cols + c] as u64 * inv % p64) as u32;
        }
        for r2 in 0..rows {
            if r2 == pivot_row || m[r2 * cols + col] == 0 {
                continue;
            }
            let factor = m[r2 * cols + col] as u64;
            for c in col..cols {
                let sub = factor * m[pivot_row * cols + c] as u64 % p64;
                m[r2 * cols + c] =
                    ((m[r2 * cols + c] as u64 + p64 - sub) % p64) as u32;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// Rank of a rows x cols matrix over GF(p).
pub fn rank(matrix: &[u32], rows: usize, cols: usize, p: u32) -> usize {
    let mut m = matrix.to_vec();
    row_reduce(&mut m, rows, cols, p).len()
}

/// Inverse of an n x n matrix over GF(p), if it exists.
pub fn invert(matrix: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
    let cols = 2 * n;
    let mut aug = vec![0u32; n * cols];
    for r in 0..n {
        for c in 0..n {
            aug[r * cols + c] = matrix[r * n + c];
        }
        aug[r * cols + n + r] = 1;
    }
    let pivots = row_reduce(&mut aug, n, cols, p);
    if pivots.iter().filter(|&&c| c < n).count() < n {
        return None;
    }
    let mut out = vec![0u32; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = aug[r * cols + n + c];
        }
    }
    Some(out)
}

/// All solutions of the linear system m * x = b over GF(p), returned as a
/// particular solution plus a nullspace basis; None if inconsistent.
pub fn solve(
    matrix: &[u32],
    rows: usize,
    cols: usize,
    b: &[u32],
    p: u32,
) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let aug_cols = cols + 1;
    let mut aug = vec![0u32; rows * aug_cols];
    for r in 0..rows {
        for c in 0..cols {
            aug[r * aug_cols + c] = matrix[r * cols + c];
        }
        aug[r * aug_cols + cols] = b[r];
    }
    let pivots = row_reduce(&mut aug, rows, aug_cols, p);
    if pivots.contains(&cols) {
        return None;
    }
    let mut particular = vec![0u32; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[row * aug_cols + cols];
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut nullspace = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            let coeff = aug[row * aug_cols + free];
            if coeff != 0 {
                v[pc] = p - coeff;
            }
        }
        nullspace.push(v);
    }
    Some((particular, nullspace))
}

/// Iterates all points of the affine set particular + span(nullspace),
/// calling `f` for each; stops early when `f` returns false.
pub fn for_each_affine_point(
    particular: &[u32],
    nullspace: &[Vec<u32>],
    p: u32,
    mut f: impl FnMut(&[u32]) -> bool,
) -> bool {
    let cols = particular.len();
    let k = nullspace.len();
    let mut coeffs = vec![0u32; k];
    let mut point = vec![0u32; cols];
    loop {
        for c in 0..cols {
            let mut acc = particular[c] as u64;
            for (ci, base) in coeffs.iter().zip(nullspace.iter()) {
                acc += *ci as u64 * base[c] as u64 % p as u64;
            }
            point[c] = (acc % p as u64) as u32;
        }
        if !f(&point) {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}
