use super::poly::{gcd, UniPoly};
use crate::error::{Error, Result};

/// Yun's algorithm: `f = lc(f) · ∏ p_i^{m_i}` with each `p_i` monic,
/// square-free and pairwise coprime. Constant factors are omitted.
pub fn squarefree_decompose(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_decompose"));
    }
    let f = f.monic()?;
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let b = gcd(&f, &df);
    let mut c = exact(&f, &b)?;
    let mut d = &exact(&df, &b)? - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while c.degree() > 0 {
        let a = gcd(&c, &d);
        c = exact(&c, &a)?;
        d = &exact(&d, &a)? - &c.derivative();
        if a.degree() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

fn exact(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    a.exact_div(b)?
        .ok_or_else(|| Error::Internal("inexact division in square-free decomposition".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_root() {
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[2, 1]);
        let f = &(&a * &a) * &b;
        assert_eq!(squarefree_decompose(&f).unwrap(), vec![(b, 1), (a, 2)]);
    }

    #[test]
    fn squarefree_input() {
        let f = UniPoly::from_ints(&[-2, 0, 2]);
        assert_eq!(squarefree_decompose(&f).unwrap(), vec![(UniPoly::from_ints(&[-1, 0, 1]), 1)]);
    }
}
