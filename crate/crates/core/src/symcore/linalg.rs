use num_traits::Zero;

use super::poly::MultiPoly;
use super::rational::Rational;
use super::SymError;

/// Determinant by cofactor expansion along the first row; fine for the small sizes used here.
pub fn det_poly(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, SymError> {
    let n = m.len();
    if n == 0 {
        return Err(SymError::Argument("empty matrix".into()));
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(SymError::Argument("matrix is not square".into()));
    }
    Ok(laplace(m, &(0..n).collect::<Vec<_>>()))
}

fn laplace(m: &[Vec<MultiPoly>], cols: &[usize]) -> MultiPoly {
    let row = m.len() - cols.len();
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].vars());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(m, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Adjugate matrix, so that A·adj(A) = det(A)·I.
pub fn adjugate_poly(m: &[Vec<MultiPoly>]) -> Result<Vec<Vec<MultiPoly>>, SymError> {
    let n = m.len();
    if n == 0 {
        return Err(SymError::Argument("empty matrix".into()));
    }
    let vars = m[0][0].vars().clone();
    if n == 1 {
        return Ok(vec![vec![MultiPoly::one(&vars)]]);
    }
    let mut adj = vec![vec![MultiPoly::zero(&vars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<MultiPoly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = det_poly(&minor)?;
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    Ok(adj)
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let pv = a[rank][col].clone();
        for r in 0..nrows {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &pv;
                for c in col..ncols {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &pv;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    det
}

/// Rank over the fraction field of the coefficient ring (fraction-free elimination).
pub fn rank_poly(rows: &[Vec<MultiPoly>]) -> Result<usize, SymError> {
    let mut a: Vec<Vec<MultiPoly>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return Ok(0);
    }
    let ncols = a[0].len();
    let vars = a[0][0].vars().clone();
    let mut prev = MultiPoly::one(&vars);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let num = &(&a[rank][col] * &a[r][c]) - &(&a[r][col] * &a[rank][c]);
                a[r][c] = num.div_exact(&prev)?;
            }
            a[r][col] = MultiPoly::zero(&vars);
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::super::poly::var_list;
    use super::super::rational::{int, rat};
    use super::*;

    #[test]
    fn determinant_and_adjugate() {
        let v = var_list(&["a", "b"]);
        let a = MultiPoly::var(&v, 0);
        let b = MultiPoly::var(&v, 1);
        let one = MultiPoly::one(&v);
        let m = vec![vec![a.clone(), b.clone()], vec![one.clone(), a.clone()]];
        let d = det_poly(&m).unwrap();
        assert_eq!(d, &a.pow(2) - &b);
        let adj = adjugate_poly(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = MultiPoly::zero(&v);
                for k in 0..2 {
                    s = &s + &(&m[i][k] * &adj[k][j]);
                }
                let expect = if i == j { d.clone() } else { MultiPoly::zero(&v) };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn ranks() {
        let rows = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), rat(1, 2)],
        ];
        assert_eq!(rank_rational(&rows), 2);
        assert_eq!(det_rational(&rows), int(0));
        assert_eq!(det_rational(&[vec![int(0), int(2)], vec![int(3), int(1)]]), int(-6));
        let v = var_list(&["a"]);
        let a = MultiPoly::var(&v, 0);
        let one = MultiPoly::one(&v);
        let m = vec![vec![a.clone(), one.clone()], vec![a.pow(2), a.clone()]];
        assert_eq!(rank_poly(&m).unwrap(), 1);
        let m2 = vec![vec![a.clone(), one.clone()], vec![one.clone(), a.clone()]];
        assert_eq!(rank_poly(&m2).unwrap(), 2);
    }
}
