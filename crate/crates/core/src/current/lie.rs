//! Finite-dimensional Lie algebras over ℚ given by structure constants.

use serde::{Deserialize, Serialize};

use crate::error::KncError;
use crate::exact::Rat;

/// A Lie algebra with basis `x_0, ..., x_{d-1}`, `[x_i, x_j] = Σ c_{ij}^k x_k`,
/// and a symmetric bilinear form `B`.
///
/// Construction checks antisymmetry, the Jacobi identity and symmetry of
/// `B`. Invariance of `B` is not enforced, see [`FinDimLie::invariance_violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimLie {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rat>>>,
    form: Vec<Vec<Rat>>,
    trace: Option<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct LieJson {
    dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
    brackets: Vec<(usize, usize, usize, Rat)>,
    form: Vec<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<Rat>>,
}

impl Serialize for FinDimLie {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for (k, v) in self.c[i][j].iter().enumerate() {
                    if !v.is_zero() {
                        brackets.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        LieJson {
            dim: d,
            labels: self.labels.clone(),
            brackets,
            form: self.form.clone(),
            trace: self.trace.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinDimLie {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = LieJson::deserialize(d)?;
        let labels = if j.labels.is_empty() {
            (0..j.dim).map(|i| format!("x{i}")).collect()
        } else {
            j.labels
        };
        let mut lie = FinDimLie::new(labels, j.brackets, j.form).map_err(serde::de::Error::custom)?;
        if let Some(t) = j.trace {
            lie = lie.with_trace(t).map_err(serde::de::Error::custom)?;
        }
        Ok(lie)
    }
}

fn zeros(d: usize) -> Vec<Vec<Rat>> {
    vec![vec![Rat::zero(); d]; d]
}

impl FinDimLie {
    /// Build from brackets `[x_i, x_j] ∋ c x_k` listed for `i < j` (or both
    /// orders, consistently) and the Gram matrix of `B`.
    pub fn new(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
        form: Vec<Vec<Rat>>,
    ) -> Result<Self, KncError> {
        let d = labels.len();
        if form.len() != d || form.iter().any(|r| r.len() != d) {
            return Err(KncError::Invalid(format!("form must be {d} x {d}")));
        }
        let mut c = vec![zeros(d); d];
        let mut seen = vec![vec![vec![false; d]; d]; d];
        for (i, j, k, v) in brackets {
            if i >= d || j >= d || k >= d {
                return Err(KncError::Invalid(format!("bracket index ({i}, {j}, {k}) out of range")));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(KncError::Invalid(format!("[x{i}, x{i}] must vanish")));
                }
                continue;
            }
            if seen[j][i][k] {
                if c[j][i][k] != -&v {
                    return Err(KncError::Invalid(format!("constants ({i}, {j}, {k}) are not antisymmetric")));
                }
                continue;
            }
            seen[i][j][k] = true;
            c[j][i][k] = -&v;
            c[i][j][k] = v;
        }
        for i in 0..d {
            for j in 0..i {
                if form[i][j] != form[j][i] {
                    return Err(KncError::Invalid(format!("form is not symmetric at ({i}, {j})")));
                }
            }
        }
        let lie = FinDimLie {
            labels,
            c,
            form,
            trace: None,
        };
        if let Some((i, j, k)) = lie.jacobi_violation() {
            return Err(KncError::Invalid(format!(
                "Jacobi identity fails on ({}, {}, {})",
                lie.labels[i], lie.labels[j], lie.labels[k]
            )));
        }
        Ok(lie)
    }

    /// `sl(2)` with basis `e, h, f`, `[e, f] = h`, `[h, e] = 2e`, `[h, f] = -2f`
    /// and the trace form `B(e, f) = 1`, `B(h, h) = 2`.
    pub fn sl2() -> Self {
        let r = Rat::from_int;
        let mut form = zeros(3);
        form[0][2] = r(1);
        form[2][0] = r(1);
        form[1][1] = r(2);
        FinDimLie::new(
            vec!["e".into(), "h".into(), "f".into()],
            [(0, 2, 1, r(1)), (1, 0, 0, r(2)), (1, 2, 2, r(-2))],
            form,
        )
        .expect("sl2 is a Lie algebra")
        .with_trace(vec![Rat::zero(); 3])
        .expect("dimension matches")
    }

    /// `gl(n)` with basis `E_ij` at index `i n + j`, the trace form
    /// `B(E_ij, E_kl) = δ_jk δ_il` and the matrix trace.
    pub fn gl(n: usize) -> Self {
        let d = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut brackets = Vec::new();
        let mut form = zeros(d);
        for (i, j, k, l) in (0..d).flat_map(|a| (0..d).map(move |b| (a / n, a % n, b / n, b % n))) {
            if idx(i, j) >= idx(k, l) {
                continue;
            }
            let mut out = vec![Rat::zero(); d];
            if j == k {
                out[idx(i, l)] += Rat::one();
            }
            if l == i {
                out[idx(k, j)] -= Rat::one();
            }
            for (t, v) in out.into_iter().enumerate() {
                if !v.is_zero() {
                    brackets.push((idx(i, j), idx(k, l), t, v));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                form[idx(i, j)][idx(j, i)] = Rat::one();
            }
        }
        let labels = (0..d).map(|a| format!("E{}{}", a / n + 1, a % n + 1)).collect();
        let trace = (0..d).map(|a| if a / n == a % n { Rat::one() } else { Rat::zero() }).collect();
        FinDimLie::new(labels, brackets, form)
            .expect("gl(n) is a Lie algebra")
            .with_trace(trace)
            .expect("dimension matches")
    }

    /// The same brackets with another symmetric form.
    pub fn with_form(&self, form: Vec<Vec<Rat>>) -> Result<Self, KncError> {
        let mut out = FinDimLie::new(self.labels.clone(), self.bracket_list(), form)?;
        out.trace = self.trace.clone();
        Ok(out)
    }

    /// Attach a linear functional, checked to vanish on `[g, g]`.
    pub fn with_trace(mut self, trace: Vec<Rat>) -> Result<Self, KncError> {
        if trace.len() != self.dim() {
            return Err(KncError::Invalid(format!("trace needs {} entries", self.dim())));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let t: Rat = self.c[i][j].iter().zip(&trace).map(|(a, b)| a * b).sum();
                if !t.is_zero() {
                    return Err(KncError::Invalid(format!(
                        "trace does not vanish on [{}, {}]",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        self.trace = Some(trace);
        Ok(self)
    }

    fn bracket_list(&self) -> Vec<(usize, usize, usize, Rat)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for (k, v) in self.c[i][j].iter().enumerate() {
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// `c_{ij}^k` for all `k`.
    pub fn bracket(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    pub fn form(&self, i: usize, j: usize) -> &Rat {
        &self.form[i][j]
    }

    pub fn form_matrix(&self) -> &[Vec<Rat>] {
        &self.form
    }

    pub fn trace(&self) -> Option<&[Rat]> {
        self.trace.as_deref()
    }

    /// `[u, v]` for coordinate vectors.
    pub fn bracket_vec(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::zero(); d];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += c * &ab;
                    }
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }

    fn form_vec(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() && !self.form[i][j].is_zero() {
                    acc += a * b * &self.form[i][j];
                }
            }
        }
        acc
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    let s1 = self.bracket_vec(&self.bracket_vec(&x, &y), &z);
                    let s2 = self.bracket_vec(&self.bracket_vec(&y, &z), &x);
                    let s3 = self.bracket_vec(&self.bracket_vec(&z, &x), &y);
                    if (0..d).any(|t| !(&s1[t] + &s2[t] + &s3[t]).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Basis triples with `B([x, y], z) ≠ B(x, [y, z])`.
    pub fn invariance_violations(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    if self.form_vec(&self.bracket_vec(&x, &y), &z) != self.form_vec(&x, &self.bracket_vec(&y, &z)) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_invariant(&self) -> bool {
        self.invariance_violations().is_empty()
    }

    pub fn from_json(s: &str) -> Result<Self, KncError> {
        serde_json::from_str(s).map_err(|e| KncError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lie algebra serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn builtins() {
        let s = FinDimLie::sl2();
        assert_eq!(s.bracket(0, 2), &[q(0), q(1), q(0)]);
        assert_eq!(s.bracket(2, 1), &[q(0), q(0), q(2)]);
        assert!(s.is_invariant());
        let g = FinDimLie::gl(2);
        assert_eq!(g.dim(), 4);
        assert!(g.is_invariant());
        // [E12, E21] = E11 - E22
        assert_eq!(g.bracket(1, 2), &[q(1), q(0), q(0), q(-1)]);
        let g3 = FinDimLie::gl(3);
        assert!(g3.is_invariant());
        assert_eq!(g3.trace().unwrap().iter().filter(|t| t.is_one()).count(), 3);
    }

    #[test]
    fn validation() {
        let s = FinDimLie::sl2();
        let mut bad = s.form_matrix().to_vec();
        bad[1][1] = q(1);
        let t = s.with_form(bad).unwrap();
        assert!(!t.is_invariant());
        let mut asym = s.form_matrix().to_vec();
        asym[0][1] = q(1);
        assert!(s.with_form(asym).is_err());
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        // [a,b] = c, [b,c] = b fails Jacobi.
        let r = FinDimLie::new(labels, [(0, 1, 2, q(1)), (1, 2, 1, q(1))], zeros(3));
        assert!(matches!(r, Err(KncError::Invalid(_))));
        assert!(FinDimLie::sl2().with_trace(vec![q(0), q(1), q(0)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        for lie in [FinDimLie::sl2(), FinDimLie::gl(2)] {
            let s = lie.to_json();
            assert_eq!(FinDimLie::from_json(&s).unwrap(), lie);
        }
        let plain = r#"{"dim":2,"brackets":[[0,1,1,"1"]],"form":[["0","0"],["0","0"]]}"#;
        let lie = FinDimLie::from_json(plain).unwrap();
        assert_eq!(lie.label(1), "x1");
        assert_eq!(lie.bracket(1, 0), &[q(0), q(-1)]);
    }
}
