use std::fmt;
use std::str::FromStr;

use super::PresentationError;
use crate::algebra::{skew_commutator, NcPoly};
use crate::scalar::{Bicharacter, ParamSpace, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanKind {
    A,
    B,
    C,
    D,
    Custom,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanKind::A => "A",
            CartanKind::B => "B",
            CartanKind::C => "C",
            CartanKind::D => "D",
            CartanKind::Custom => "custom",
        };
        write!(f, "{s}")
    }
}

impl FromStr for CartanKind {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(CartanKind::A),
            "B" | "b" => Ok(CartanKind::B),
            "C" | "c" => Ok(CartanKind::C),
            "D" | "d" => Ok(CartanKind::D),
            "custom" => Ok(CartanKind::Custom),
            _ => Err(PresentationError::Rank(format!("unknown Cartan kind `{s}`"))),
        }
    }
}

/// A generalized Cartan matrix with `a_ij = 1 - n_ij`, where `n_ij` is the
/// number of copies of `x_i` in the relation between `x_i` and `x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub kind: CartanKind,
    pub n: usize,
    pub matrix: Vec<Vec<i32>>,
}

impl CartanData {
    /// The standard matrix of a classical type. `B_n` is cubic in `x_n`
    /// (`a_{n,n-1} = -2`), `C_n` cubic in `x_{n-1}` (`a_{n-1,n} = -2`), and in
    /// `D_n` the node `n` hangs off `n-2`.
    pub fn new(kind: CartanKind, n: usize) -> Result<Self, PresentationError> {
        let min = match kind {
            CartanKind::A => 1,
            CartanKind::B | CartanKind::C => 2,
            CartanKind::D => 4,
            CartanKind::Custom => {
                return Err(PresentationError::Rank(
                    "custom Cartan data needs an explicit matrix".into(),
                ))
            }
        };
        if n < min {
            return Err(PresentationError::Rank(format!(
                "type {kind} needs rank at least {min}, got {n}"
            )));
        }
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain_end = if kind == CartanKind::D { n - 1 } else { n };
        for i in 1..chain_end {
            a[i - 1][i] = -1;
            a[i][i - 1] = -1;
        }
        match kind {
            CartanKind::B => a[n - 1][n - 2] = -2,
            CartanKind::C => a[n - 2][n - 1] = -2,
            CartanKind::D => {
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            _ => {}
        }
        Ok(CartanData { kind, n, matrix: a })
    }

    pub fn custom(matrix: Vec<Vec<i32>>) -> Result<Self, PresentationError> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(PresentationError::Schema("Cartan matrix must be square".into()));
            }
            if row[i] != 2 {
                return Err(PresentationError::Schema("Cartan diagonal must be 2".into()));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && (a > 0 || (a == 0) != (matrix[j][i] == 0)) {
                    return Err(PresentationError::Schema(format!(
                        "entry ({},{}) breaks a_ij <= 0 or a_ij = 0 <=> a_ji = 0",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CartanData {
            kind: CartanKind::Custom,
            n,
            matrix,
        })
    }

    /// `a_ij`, 1-based.
    pub fn a(&self, i: usize, j: usize) -> i32 {
        self.matrix[i - 1][j - 1]
    }
}

/// Pairs `(i, j)`, `i != j`, where `p_ij p_ji != p_ii^{a_ij}`; empty means a quantification exists.
pub fn existence_check(p: &Bicharacter, a: &CartanData) -> Result<Vec<(usize, usize)>, PresentationError> {
    if p.n() != a.n {
        return Err(PresentationError::Schema(format!(
            "bicharacter has size {}, Cartan matrix {}",
            p.n(),
            a.n
        )));
    }
    let mut bad = Vec::new();
    for i in 1..=a.n {
        for j in 1..=a.n {
            if i == j {
                continue;
            }
            let lhs = p.entry(i, j) * p.entry(j, i);
            let rhs = p.entry(i, i).powi(a.a(i, j) as i64);
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

/// The constrained generic bicharacter: base parameter `q`, free `t_ij` for
/// `i < j`, type-dependent diagonal, `p_ij = t_ij` and `p_ji = p_ii^{a_ij} t_ij^{-1}`.
pub fn generic_parameters(a: &CartanData) -> Result<Bicharacter, PresentationError> {
    let n = a.n;
    let mut names = vec!["q".to_string()];
    for i in 1..=n {
        for j in i + 1..=n {
            names.push(t_name(i, j, n));
        }
    }
    let params = ParamSpace::new(names).expect("valid names");
    let q = params.param("q").expect("declared");
    let diag = |i: usize| -> Scalar {
        let e = match a.kind {
            CartanKind::A | CartanKind::D => 1,
            CartanKind::B => {
                if i < n {
                    2
                } else {
                    1
                }
            }
            CartanKind::C => {
                if i < n {
                    1
                } else {
                    2
                }
            }
            CartanKind::Custom => 0,
        };
        q.powi(e)
    };
    if a.kind == CartanKind::Custom {
        return Err(PresentationError::Rank(
            "custom kind: supply the bicharacter explicitly".into(),
        ));
    }
    let mut m = vec![vec![Scalar::one(); n]; n];
    for i in 1..=n {
        m[i - 1][i - 1] = diag(i);
        for j in i + 1..=n {
            let t = params.param(&t_name(i, j, n)).expect("declared");
            m[j - 1][i - 1] = &diag(i).powi(a.a(i, j) as i64) * &t.inv().expect("parameter");
            m[i - 1][j - 1] = t;
        }
    }
    Ok(Bicharacter::new(params, m).expect("nonzero entries"))
}

/// `t12`, or `t1n12` once indices need two digits.
fn t_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("t{i}{j}")
    } else {
        format!("t{i}n{j}")
    }
}

/// The bracket expression of the relation between `x_i` and `x_j` (`i < j` or `i > j`),
/// e.g. `[x1,[x1,x2]]` or `[[x1,x2],x2]`.
pub fn serre_expression(a: &CartanData, i: usize, j: usize) -> String {
    let copies = (1 - a.a(i, j)) as usize;
    if i < j {
        let mut s = format!("x{j}");
        for _ in 0..copies {
            s = format!("[x{i},{s}]");
        }
        s
    } else {
        let mut s = format!("x{j}");
        for _ in 0..copies {
            s = format!("[{s},x{i}]");
        }
        s
    }
}

/// The quantized Serre relations as `(source expression, polynomial)` pairs.
///
/// For every connected pair each generator gets its relation; the bracket
/// convention attaches copies of the lexicographically larger `x_i` (`i < j`)
/// on the left and copies of `x_j` on the right. Disconnected pairs give the
/// single relation `[x_i, x_j]` for `i < j`.
pub fn serre_relations(a: &CartanData, p: &Bicharacter) -> Result<Vec<(String, NcPoly)>, PresentationError> {
    let bad = existence_check(p, a)?;
    if !bad.is_empty() {
        return Err(PresentationError::Existence(bad));
    }
    let mut out = Vec::new();
    for i in 1..=a.n {
        for j in 1..=a.n {
            if i == j || (a.a(i, j) == 0 && i > j) {
                continue;
            }
            let src = serre_expression(a, i, j);
            out.push((src, serre_poly(a, p, i, j)));
        }
    }
    // Leading words ascend in Hall order, so sort for a stable presentation.
    out.sort_by(|x, y| {
        let lx = x.1.lex_leading().map(|t| t.0.clone());
        let ly = y.1.lex_leading().map(|t| t.0.clone());
        lx.cmp(&ly)
    });
    Ok(out)
}

fn serre_poly(a: &CartanData, p: &Bicharacter, i: usize, j: usize) -> NcPoly {
    let copies = (1 - a.a(i, j)) as usize;
    let xi = NcPoly::letter(i as u8);
    let mut f = NcPoly::letter(j as u8);
    for _ in 0..copies {
        f = if i < j {
            skew_commutator(p, &xi, &f)
        } else {
            skew_commutator(p, &f, &xi)
        }
        .expect("homogeneous");
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        let b = CartanData::new(CartanKind::B, 3).unwrap();
        assert_eq!(b.matrix, vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        let c = CartanData::new(CartanKind::C, 3).unwrap();
        assert_eq!(c.matrix, vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        let d = CartanData::new(CartanKind::D, 4).unwrap();
        assert_eq!(
            d.matrix,
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2]
            ]
        );
        assert!(CartanData::new(CartanKind::D, 3).is_err());
    }

    #[test]
    fn expressions() {
        let b = CartanData::new(CartanKind::B, 2).unwrap();
        assert_eq!(serre_expression(&b, 1, 2), "[x1,[x1,x2]]");
        assert_eq!(serre_expression(&b, 2, 1), "[[[x1,x2],x2],x2]");
    }
}
