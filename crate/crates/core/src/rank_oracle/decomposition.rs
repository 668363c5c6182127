//! Explicit rational rank decompositions of the normal forms, carried through changes of basis.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::normal_forms::{orbit_representative, sigma2_point, sigma2_terms, sigma3_point, sigma3_terms, SigmaThreeSpec};
use crate::rational::{format_q, q, Q};
use crate::tensor::{GLTuple, Tensor};

/// `Σ c_k v_k^1 ⊗ .. ⊗ v_k^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub dims: Vec<usize>,
    pub terms: Vec<(Q, Vec<Vec<Q>>)>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sum(&self) -> Result<Tensor> {
        let mut acc = Tensor::zeros(self.dims.clone())?;
        for (c, factors) in &self.terms {
            acc = acc.add(&Tensor::rank_one(factors)?.scale(c))?;
        }
        Ok(acc)
    }

    pub fn verify(&self, t: &Tensor) -> Result<bool> {
        Ok(&self.sum()? == t)
    }

    pub fn apply_gl(&self, g: &GLTuple) -> Result<Decomposition> {
        let terms = self
            .terms
            .iter()
            .map(|(c, fs)| {
                let fs = fs.iter().zip(g.mats()).map(|(v, m)| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
                Ok((c.clone(), fs))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { dims: self.dims.clone(), terms })
    }

    pub fn describe(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(c, fs)| {
                let parts: Vec<String> =
                    fs.iter().map(|v| format!("({})", v.iter().map(format_q).collect::<Vec<_>>().join(","))).collect();
                format!("{} * {}", format_q(c), parts.join(" x "))
            })
            .collect()
    }
}

/// Where a tensor came from; decompositions exist only for known constructions.
#[derive(Debug, Clone)]
pub enum Provenance {
    Orbit(u32),
    Sigma2 { n: usize, j_set: Vec<usize>, dims: Vec<usize> },
    Sigma3(SigmaThreeSpec),
    Transformed(Box<Provenance>, GLTuple),
}

impl Provenance {
    pub fn tensor(&self) -> Result<Tensor> {
        match self {
            Provenance::Orbit(id) => orbit_representative(*id),
            Provenance::Sigma2 { n, j_set, dims } => sigma2_point(*n, j_set, dims),
            Provenance::Sigma3(spec) => sigma3_point(spec),
            Provenance::Transformed(inner, g) => inner.tensor()?.apply_gl(g),
        }
    }
}

fn basis(d: usize, i: usize) -> Vec<Q> {
    (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

fn monomial_decomposition(dims: &[usize], terms: &[Vec<usize>]) -> Decomposition {
    Decomposition {
        dims: dims.to_vec(),
        terms: terms
            .iter()
            .map(|t| (Q::one(), t.iter().zip(dims).map(|(&i, &d)| basis(d, i)).collect()))
            .collect(),
    }
}

fn v3(xs: [i64; 3]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

/// `Σ α_k ⊗ b_k ⊗ c_k` from (A-coefficients, B vector, C vector) triples.
fn triples(rows: &[([i64; 3], [i64; 3], [i64; 3])]) -> Decomposition {
    Decomposition {
        dims: vec![3, 3, 3],
        terms: rows.iter().map(|(a, b, c)| (Q::one(), vec![v3(*a), v3(*b), v3(*c)])).collect(),
    }
}

/// Hankel slices `u H_0 + t H_1 + s H_2`, where `H_k = Σ_{i+j=k} E_ij`, from five points of
/// the conic `(1, λ, λ²) ⊗ (1, λ, λ²)`. The A-weights invert the 5 x 5 Vandermonde matrix
/// so that moments 3 and 4 cancel.
fn hankel_decomposition() -> Result<Decomposition> {
    let nodes = [0i64, 1, -1, 2, -2];
    let vander = Matrix::new(5, 5, nodes.iter().flat_map(|&l| (0..5).map(move |k| q(l.pow(k)))).collect())?;
    // weights w with Σ_p w_p λ_p^k = target_k
    let weights_for = |k: usize| -> Result<Vec<Q>> {
        let target: Vec<Q> = (0..5).map(|j| if j == k { Q::one() } else { Q::zero() }).collect();
        vander.transpose().solve(&target).ok_or(Error::Singular)
    };
    // moment k goes to A-coordinate: H_0 -> u (2), H_1 -> t (1), H_2 -> s (0)
    let w: Vec<Vec<Q>> = (0..3).map(weights_for).collect::<Result<_>>()?;
    let terms = nodes
        .iter()
        .enumerate()
        .map(|(p, &l)| {
            let a = vec![w[2][p].clone(), w[1][p].clone(), w[0][p].clone()];
            let conic = vec![q(1), q(l), q(l * l)];
            (Q::one(), vec![a, conic.clone(), conic])
        })
        .collect();
    Ok(Decomposition { dims: vec![3, 3, 3], terms })
}

fn orbit_decomposition(id: u32) -> Result<Decomposition> {
    // symmetric pairs E_ij + E_ji = (e_i + e_j)^2 - E_ii - E_jj
    Ok(match id {
        34 => triples(&[
            ([-1, 1, -1], [1, 0, 0], [1, 0, 0]),
            ([1, 0, 0], [1, 1, 0], [1, 1, 0]),
            ([-1, 0, 0], [0, 1, 0], [0, 1, 0]),
            ([0, 0, 1], [1, 0, 1], [1, 0, 1]),
            ([0, 0, -1], [0, 0, 1], [0, 0, 1]),
        ]),
        35 => triples(&[
            ([-1, 1, 0], [1, 0, 0], [1, 0, 0]),
            ([1, 0, 0], [1, 1, 0], [1, 1, 0]),
            ([-1, 0, 0], [0, 1, 0], [0, 1, 0]),
            ([1, 0, 0], [0, 0, 1], [0, 0, 1]),
            ([0, 0, 1], [0, 0, 1], [1, 0, 0]),
        ]),
        36 => triples(&[
            ([-1, 1, 0], [1, 0, 0], [1, 0, 0]),
            ([1, 0, 0], [1, 1, 0], [1, 1, 0]),
            ([-1, 0, 0], [0, 1, 0], [0, 1, 0]),
            ([1, 0, 0], [0, 0, 1], [0, 0, 1]),
            ([0, 0, 1], [1, 0, 0], [0, 0, 1]),
        ]),
        37 => hankel_decomposition()?,
        38 | 39 => monomial_decomposition(&[3, 3, 3], &crate::normal_forms::orbit_terms(id)?),
        _ => return Err(Error::InvalidArgument(format!("orbit id {id} not in 34..39"))),
    })
}

/// Explicit decomposition whose length is the known rank bound for the construction:
/// the orbit table ranks, `|J|` for σ₂ points, and one term per monomial for σ₃ forms.
pub fn rank_upper_bound(p: &Provenance) -> Result<Decomposition> {
    let d = match p {
        Provenance::Orbit(id) => orbit_decomposition(*id)?,
        Provenance::Sigma2 { n, j_set, dims } => monomial_decomposition(dims, &sigma2_terms(*n, j_set, dims)?),
        Provenance::Sigma3(spec) => monomial_decomposition(&spec.dims, &sigma3_terms(spec)?),
        Provenance::Transformed(inner, g) => rank_upper_bound(inner)?.apply_gl(g)?,
    };
    debug_assert!(d.verify(&p.tensor()?).unwrap_or(false));
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::{orbit_rank, SigmaType, ORBIT_IDS};

    #[test]
    fn orbit_decompositions_sum_back() {
        for id in ORBIT_IDS {
            let p = Provenance::Orbit(id);
            let d = rank_upper_bound(&p).unwrap();
            assert!(d.verify(&p.tensor().unwrap()).unwrap(), "orbit {id}");
            assert_eq!(Some(d.len()), orbit_rank(id));
        }
    }

    #[test]
    fn sigma_lengths() {
        let p = Provenance::Sigma2 { n: 4, j_set: vec![0, 2, 3], dims: vec![2; 4] };
        assert_eq!(rank_upper_bound(&p).unwrap().len(), 3);
        for n in 3..=5 {
            let p = Provenance::Sigma3(SigmaThreeSpec::new(SigmaType::III, n));
            let d = rank_upper_bound(&p).unwrap();
            assert_eq!(d.len(), n * (n + 1) / 2);
            assert!(d.verify(&p.tensor().unwrap()).unwrap());
        }
    }
}
