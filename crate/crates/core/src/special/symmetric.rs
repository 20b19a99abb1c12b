use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `e_k(x_1..x_n)`, by the usual one-pass recurrence.
pub fn elementary_symmetric<T: Num + Clone>(xs: &[T], k: usize) -> T {
    if k > xs.len() {
        return T::zero();
    }
    let mut e = vec![T::zero(); k + 1];
    e[0] = T::one();
    for x in xs {
        for j in (1..=k).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * x.clone();
        }
    }
    e.swap_remove(k)
}

/// The chain `e_q(b)/e_{q−r}(a) ≤ e_{q−1}(b)/e_{q−r−1}(a) ≤ … ≤ e_r(b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricChainReport<T> {
    /// `e_{q−j}(b)/e_{q−r−j}(a)` for `j = 0..=q−r`.
    pub ratios: Vec<T>,
    pub satisfied: bool,
    /// First `j` with `ratios[j] > ratios[j+1]`.
    pub violated_index: Option<usize>,
}

/// Evaluates the chain for `a` of length `q−r` and `b` of length `q`.
pub fn symmetric_chain_check<T: Num + Clone + PartialOrd>(
    a: &[T],
    b: &[T],
    r: usize,
) -> Result<SymmetricChainReport<T>> {
    let q = b.len();
    if r > q || a.len() != q - r {
        return Err(Error::Arity(format!(
            "need len(a) = len(b) - r with r <= len(b) (len(a) = {}, len(b) = {q}, r = {r})",
            a.len()
        )));
    }
    let ratios: Vec<T> = (0..=q - r)
        .map(|j| elementary_symmetric(b, q - j) / elementary_symmetric(a, q - r - j))
        .collect();
    let violated_index = ratios.windows(2).position(|w| w[0] > w[1]);
    Ok(SymmetricChainReport {
        satisfied: violated_index.is_none(),
        violated_index,
        ratios,
    })
}

/// Whether `f_n = Π(a_i)_n / Π(b_j)_n` satisfies `f_{n−1}f_{n+1} ≤ f_n²` for `1 ≤ n ≤ n_max`.
///
/// Run it on rationals for an exact answer.
pub fn hyperterm_logconcavity<T: Num + Clone + PartialOrd>(a: &[T], b: &[T], n_max: usize) -> bool {
    let mut f = Vec::with_capacity(n_max + 2);
    let mut term = T::one();
    let mut n = T::zero();
    f.push(term.clone());
    for _ in 0..=n_max {
        for ai in a {
            term = term * (ai.clone() + n.clone());
        }
        for bj in b {
            term = term / (bj.clone() + n.clone());
        }
        f.push(term.clone());
        n = n + T::one();
    }
    (1..=n_max).all(|k| f[k - 1].clone() * f[k + 1].clone() <= f[k].clone() * f[k].clone())
}
