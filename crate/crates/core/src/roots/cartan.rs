//! Cartan matrices in Bourbaki numbering, `C[i][j] = <α_j, α_i∨>`, 0-indexed.

use crate::error::{Error, Result};

use super::Family;

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

/// Cartan matrix of an irreducible type. Also accepts `C2` and `D3`, which
/// arise as duals and are not rejected here.
pub fn cartan_matrix(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    let unsupported = || Err(Error::UnsupportedType(format!("{family}{n}")));
    match family {
        Family::A if n >= 1 => Ok(chain(n)),
        Family::B if n >= 2 => {
            let mut c = chain(n);
            // α_n is short
            c[n - 1][n - 2] = -2;
            Ok(c)
        }
        Family::C if n >= 2 => {
            let mut c = chain(n);
            // α_n is long
            c[n - 2][n - 1] = -2;
            Ok(c)
        }
        Family::D if n >= 3 => {
            let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            edges.push((n - 3, n - 1));
            Ok(from_edges(n, &edges))
        }
        Family::E if n == 6 => Ok(from_edges(6, &[(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)])),
        Family::F if n == 4 => {
            let mut c = chain(4);
            c[2][1] = -2;
            Ok(c)
        }
        Family::G if n == 2 => Ok(vec![vec![2, -3], vec![-1, 2]]),
        _ => unsupported(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bourbaki_tables() {
        assert_eq!(cartan_matrix(Family::B, 2).unwrap(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_matrix(Family::C, 3).unwrap(), vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        assert_eq!(
            cartan_matrix(Family::D, 4).unwrap(),
            vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]]
        );
        assert_eq!(
            cartan_matrix(Family::F, 4).unwrap(),
            vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]]
        );
        let e6 = cartan_matrix(Family::E, 6).unwrap();
        assert_eq!(e6[1][3], -1);
        assert_eq!(e6[0][2], -1);
        assert_eq!(e6[0][1], 0);
    }
}
