//! Dense polynomials over a small prime field, and Berlekamp factorization.
//!
//! Coefficients are `u64` residues, lowest degree first, with no trailing
//! zeros. Primes stay below `2^31`, so products fit in a `u64`.

pub type Fp = Vec<u64>;

pub fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; callers pass nonzero residues.
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    let mut out: Fp = a.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut rem = a.clone();
    let db = b.len();
    let mut quot = vec![0u64; a.len() - db + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db - 1] * inv % p;
        if c != 0 {
            for (j, &g) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - c * g % p) % p;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db - 1);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

/// Monic gcd.
pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_empty() {
        let r = rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    monic(&r0, p)
}

/// `(u, v, g)` with `u·a + v·b = g` monic.
pub fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().expect("not both zero"), p);
    (scale(&s0, inv, p), scale(&t0, inv, p), scale(&r0, inv, p))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    let mut out: Fp = a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect();
    trim(&mut out);
    out
}

pub fn is_squarefree(a: &Fp, p: u64) -> bool {
    let d = derivative(a, p);
    if d.is_empty() {
        return a.len() <= 1;
    }
    gcd(a, &d, p).len() == 1
}

/// Rows of the Berlekamp matrix minus identity: row `i` holds `y^{ip} mod f − y^i`.
fn berlekamp_matrix(f: &Fp, p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    let mut rows = Vec::with_capacity(n);
    // y^p mod f, then successive powers.
    let xp = {
        let mut base: Fp = vec![0, 1];
        base = rem(&base, f, p);
        let mut acc: Fp = vec![1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), f, p);
            }
            base = rem(&mul(&base, &base, p), f, p);
            e >>= 1;
        }
        acc
    };
    let mut cur: Fp = vec![1];
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (k, &c) in cur.iter().enumerate() {
            row[k] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = rem(&mul(&cur, &xp, p), f, p);
    }
    rows
}

/// Basis of `{v : v·M = 0}` for the square matrix `M` given by rows.
fn left_nullspace(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = rows.len();
    // Work on the transpose so the left kernel becomes a right kernel.
    let mut a: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[row][fc]) % p;
            }
            v
        })
        .collect()
}

/// Number of irreducible factors of a square-free `f` modulo `p`.
pub fn berlekamp_count(f: &Fp, p: u64) -> usize {
    if f.len() <= 2 {
        return f.len().saturating_sub(1);
    }
    left_nullspace(&berlekamp_matrix(f, p), p).len()
}

/// Monic irreducible factors of a square-free `f` of positive degree modulo `p`,
/// sorted by degree then coefficients.
pub fn berlekamp_factor(f: &Fp, p: u64) -> Vec<Fp> {
    let f = monic(f, p);
    if f.len() <= 2 {
        return vec![f];
    }
    let basis = left_nullspace(&berlekamp_matrix(&f, p), p);
    let r = basis.len();
    let mut factors = vec![f];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let mut vp: Fp = v.clone();
        trim(&mut vp);
        if vp.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            let mut rest = u;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let g = gcd(&rest, &sub(&vp, &vec![s], p), p);
                if g.len() > 1 && g.len() < rest.len() {
                    rest = div_rem(&rest, &g, p).0;
                    next.push(g);
                }
            }
            next.push(monic(&rest, p));
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), r);
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    factors
}
