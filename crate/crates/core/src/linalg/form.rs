//! Congruence diagonalization of symmetric bilinear forms.

use crate::error::{Error, Result};
use crate::field::{FqElem, SquareClass};

use super::MatrixFq;

/// `Pᵀ G P = diag(d)`; the columns of `P` are the new basis.
#[derive(Clone, Debug)]
pub struct FormDiagonalization {
    pub p: MatrixFq,
    pub diag: Vec<FqElem>,
    /// Rank of the form, i.e. the number of nonzero diagonal entries.
    pub rank: usize,
    /// Discriminant of the nondegenerate quotient (`Square` when the rank is 0).
    pub disc: SquareClass,
}

/// Symmetric Gaussian elimination. Nonzero diagonal entries come first.
pub fn diagonalize_form(g: &MatrixFq) -> Result<FormDiagonalization> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let k = g.field().clone();
    let t = g.rows();
    let mut a = g.clone();
    let mut p = MatrixFq::identity(&k, t);

    // e_i <- e_i + c e_j applied as a congruence.
    let add_multiple = |a: &mut MatrixFq, p: &mut MatrixFq, i: usize, j: usize, c: FqElem| {
        for r in 0..t {
            let v = k.add(a.get(r, i), k.mul(c, a.get(r, j)));
            a.set(r, i, v);
        }
        for r in 0..t {
            let v = k.add(a.get(i, r), k.mul(c, a.get(j, r)));
            a.set(i, r, v);
        }
        for r in 0..t {
            let v = k.add(p.get(r, i), k.mul(c, p.get(r, j)));
            p.set(r, i, v);
        }
    };
    let swap = |a: &mut MatrixFq, p: &mut MatrixFq, i: usize, j: usize| {
        if i == j {
            return;
        }
        for r in 0..t {
            let (x, y) = (a.get(r, i), a.get(r, j));
            a.set(r, i, y);
            a.set(r, j, x);
        }
        for r in 0..t {
            let (x, y) = (a.get(i, r), a.get(j, r));
            a.set(i, r, y);
            a.set(j, r, x);
        }
        for r in 0..t {
            let (x, y) = (p.get(r, i), p.get(r, j));
            p.set(r, i, y);
            p.set(r, j, x);
        }
    };

    let mut rank = 0;
    for c in 0..t {
        let piv = (c..t).find(|&i| !a.get(i, i).is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                let off = (c..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero());
                match off {
                    Some((i, j)) => {
                        add_multiple(&mut a, &mut p, i, j, FqElem::ONE);
                        i
                    }
                    None => break,
                }
            }
        };
        swap(&mut a, &mut p, c, piv);
        let inv = k.inv(a.get(c, c))?;
        for j in c + 1..t {
            let f = a.get(c, j);
            if !f.is_zero() {
                add_multiple(&mut a, &mut p, j, c, k.neg(k.mul(f, inv)));
            }
        }
        rank += 1;
    }
    let diag: Vec<FqElem> = (0..t).map(|i| a.get(i, i)).collect();
    let prod = diag[..rank].iter().fold(FqElem::ONE, |acc, &d| k.mul(acc, d));
    let disc = k.square_class(prod)?;
    Ok(FormDiagonalization { p, diag, rank, disc })
}

/// Basis change `P` with `Pᵀ G P = diag(1, ..., 1, d)`, `d` the canonical
/// representative of the discriminant.
pub fn normalize_form(g: &MatrixFq) -> Result<MatrixFq> {
    let fd = diagonalize_form(g)?;
    let t = g.rows();
    if fd.rank < t {
        return Err(Error::Degenerate);
    }
    let k = g.field().clone();
    let c = k.canonical_nonsquare();
    // Scale every basis vector so its norm is 1 or c.
    let mut cols: Vec<Vec<FqElem>> = (0..t).map(|j| fd.p.col(j)).collect();
    let mut squares = Vec::new();
    let mut nonsquares = Vec::new();
    for (j, &d) in fd.diag.iter().enumerate() {
        let rep = k.square_class_rep(d)?;
        let s = k.sqrt(k.div(d, rep)?).expect("d / rep is a square");
        let sinv = k.inv(s)?;
        for x in cols[j].iter_mut() {
            *x = k.mul(*x, sinv);
        }
        if rep == FqElem::ONE {
            squares.push(j);
        } else {
            nonsquares.push(j);
        }
    }
    // Two vectors of norm c combine to two of norm 1: find a² + b² = 1/c.
    let target = k.inv(c)?;
    let (a, b) = if nonsquares.len() >= 2 {
        k.elements()
            .flat_map(|a| k.elements().map(move |b| (a, b)))
            .find(|&(a, b)| k.add(k.mul(a, a), k.mul(b, b)) == target)
            .expect("every element is a sum of two squares")
    } else {
        (FqElem::ZERO, FqElem::ZERO)
    };
    let mut out: Vec<Vec<FqElem>> = squares.iter().map(|&j| cols[j].clone()).collect();
    let mut it = nonsquares.chunks_exact(2);
    for pair in it.by_ref() {
        let (u, v) = (&cols[pair[0]], &cols[pair[1]]);
        let e1: Vec<FqElem> = u.iter().zip(v).map(|(&x, &y)| k.add(k.mul(a, x), k.mul(b, y))).collect();
        let e2: Vec<FqElem> = u.iter().zip(v).map(|(&x, &y)| k.sub(k.mul(a, y), k.mul(b, x))).collect();
        out.push(e1);
        out.push(e2);
    }
    if let [last] = it.remainder() {
        out.push(cols[*last].clone());
    }
    let rows = MatrixFq::from_rows(&k, &out)?;
    Ok(rows.transpose())
}
