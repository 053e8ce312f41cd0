//! `{"dim": n, "re": [[..]], "im": [[..]]}` matrix serialization; `im` is
//! omitted when the matrix is real.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::matrix::{HermitianMatrix, Matrix, C64};

/// Relative asymmetry accepted when reading matrices from text.
const PARSE_SYMMETRY_TOL: f64 = 1e-12;

#[derive(Serialize, Deserialize)]
struct MatrixRecord {
    dim: usize,
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        let re = (0..n).map(|i| (0..n).map(|j| self.get(i, j).re).collect()).collect();
        let im = (!self.is_real()).then(|| (0..n).map(|i| (0..n).map(|j| self.get(i, j).im).collect()).collect());
        MatrixRecord { dim: n, re, im }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = MatrixRecord::deserialize(deserializer)?;
        let n = rec.dim;
        if n == 0 {
            return Err(D::Error::custom("dim must be at least 1"));
        }
        let check = |rows: &Vec<Vec<f64>>, name: &str| -> Result<(), D::Error> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(D::Error::custom(format!("`{name}` must be a {n}x{n} array")));
            }
            Ok(())
        };
        check(&rec.re, "re")?;
        if let Some(im) = &rec.im {
            check(im, "im")?;
        }
        let m = Matrix::from_fn(n, n, |i, j| {
            C64::new(rec.re[i][j], rec.im.as_ref().map_or(0.0, |im| im[i][j]))
        });
        HermitianMatrix::from_matrix(m, PARSE_SYMMETRY_TOL).map_err(D::Error::custom)
    }
}

impl HermitianMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_matrix_omits_imaginary_part() {
        let a = HermitianMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(a.to_json(), r#"{"dim":2,"re":[[2.0,1.0],[1.0,2.0]]}"#);
    }

    #[test]
    fn complex_round_trip() {
        let m = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.1, -0.7),
            (1, 0) => C64::new(0.1, 0.7),
            (i, _) => C64::new(1.0 + i as f64, 0.0),
        });
        let a = HermitianMatrix::from_matrix_exact(m).unwrap();
        let text = a.to_json();
        assert!(text.contains("\"im\""));
        assert_eq!(HermitianMatrix::from_json(&text).unwrap(), a);
    }

    #[test]
    fn rejects_malformed() {
        assert!(HermitianMatrix::from_json(r#"{"dim":2,"re":[[1,2],[3,4]]}"#).is_err());
        assert!(HermitianMatrix::from_json(r#"{"dim":2,"re":[[1,2]]}"#).is_err());
        assert!(HermitianMatrix::from_json(r#"{"dim":0,"re":[]}"#).is_err());
        assert!(HermitianMatrix::from_json("not json").is_err());
    }
}
