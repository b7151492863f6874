//! Closed-form optimal winning probabilities and the classification of the
//! probability simplex into their optimality regions.
//!
//! With the three color probabilities sorted descending as `p >= q >= r`,
//! the optimal winning probability of the 3-player 3-color game is one of
//! three closed forms, each the complement of one minimal pattern's mass:
//!
//! * `psi1 = p(1 - 2r^2) + (1-p)^2 (p+r)`
//! * `psi2 = 1 + p^2 r + 2pr^2 + p^2 - p - r`
//! * `psi3 = 3p(1 - p - pr)`
//!
//! Their optimality regions partition the sorted simplex into bands A, B, C
//! (from the `p = 1` corner toward the uniform point). Classification is by
//! argmax, which is total and robust at boundaries; the analytic inequality
//! descriptions of the regions only break ties and cross-check tests.

use crate::error::{Error, Result};
use crate::probability::ProbabilityVector;
use crate::scalar::Scalar;

/// The optimality regions of the sorted simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    A,
    B,
    C,
}

impl Region {
    /// Index of the winning-probability formula optimal on this region.
    pub fn formula_index(&self) -> usize {
        match self {
            Region::A => 1,
            Region::B => 2,
            Region::C => 3,
        }
    }

    pub fn from_formula_index(index: usize) -> Result<Region> {
        match index {
            1 => Ok(Region::A),
            2 => Ok(Region::B),
            3 => Ok(Region::C),
            _ => Err(Error::PsiIndex { index }),
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::A => write!(f, "A"),
            Region::B => write!(f, "B"),
            Region::C => write!(f, "C"),
        }
    }
}

/// A region assignment plus the set of formula indices tied at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionLabel {
    pub region: Region,
    /// Formula indices whose values tie with the maximum (within the
    /// scalar's tolerance). A single entry means an interior point.
    pub tied: Vec<usize>,
}

impl RegionLabel {
    pub fn winning_formula_index(&self) -> usize {
        self.region.formula_index()
    }

    pub fn is_boundary(&self) -> bool {
        self.tied.len() > 1
    }
}

/// Color probabilities sorted descending, with the permutation that maps
/// input color indices to sorted positions.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedProbs<T: Scalar> {
    pub p: T,
    pub q: T,
    pub r: T,
    /// `permutation[input_color] = sorted_position`; ties keep input order.
    pub permutation: [usize; 3],
}

impl<T: Scalar> SortedProbs<T> {
    pub fn new(probs: &ProbabilityVector<T>) -> Result<Self> {
        probs.check_colors(3)?;
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| {
            probs
                .get(b)
                .partial_cmp(probs.get(a))
                .expect("probabilities are comparable")
        });
        let mut permutation = [0usize; 3];
        for (pos, &input) in order.iter().enumerate() {
            permutation[input] = pos;
        }
        Ok(SortedProbs {
            p: probs.get(order[0]).clone(),
            q: probs.get(order[1]).clone(),
            r: probs.get(order[2]).clone(),
            permutation,
        })
    }
}

fn le_with_slack<T: Scalar>(a: &T, b: &T) -> bool {
    a.clone() <= b.clone() + T::tie_tolerance()
}

fn check_sorted_domain<T: Scalar>(p: &T, r: &T) -> Result<()> {
    let q = T::one() - p.clone() - r.clone();
    if !le_with_slack(&T::zero(), r) {
        return Err(Error::PsiDomain {
            inequality: format!("r >= 0 (r = {r})"),
        });
    }
    if !le_with_slack(r, &q) {
        return Err(Error::PsiDomain {
            inequality: format!("q >= r (q = {q}, r = {r})"),
        });
    }
    if !le_with_slack(&q, p) {
        return Err(Error::PsiDomain {
            inequality: format!("p >= q (p = {p}, q = {q})"),
        });
    }
    Ok(())
}

/// Winning probability of formula `index` at the sorted point `(p, r)`.
pub fn psi<T: Scalar>(index: usize, p: &T, r: &T) -> Result<T> {
    check_sorted_domain(p, r)?;
    psi_unchecked(index, p, r)
}

fn psi_unchecked<T: Scalar>(index: usize, p: &T, r: &T) -> Result<T> {
    let one = T::one;
    let two = || T::ratio(2, 1);
    let p = p.clone();
    let r = r.clone();
    match index {
        1 => {
            // p(1 - 2r^2) + (1-p)^2 (p + r)
            let one_m_p = one() - p.clone();
            Ok(p.clone() * (one() - two() * r.clone() * r.clone())
                + one_m_p.clone() * one_m_p * (p + r))
        }
        2 => {
            // 1 + p^2 r + 2 p r^2 + p^2 - p - r
            Ok(one()
                + p.clone() * p.clone() * r.clone()
                + two() * p.clone() * r.clone() * r.clone()
                + p.clone() * p.clone()
                - p
                - r)
        }
        3 => {
            // 3p(1 - p - pr)
            Ok(T::ratio(3, 1) * p.clone() * (one() - p.clone() - p * r))
        }
        _ => Err(Error::PsiIndex { index }),
    }
}

/// Whether the analytic description of `region` contains the sorted point
/// `(p, r)`. All curve comparisons are cleared of denominators so the test
/// is polynomial and exact in rational mode; `p` against the irrational
/// threshold `alpha = (3 - sqrt 5)/2` is decided by the sign of
/// `p^2 - 3p + 1`.
pub fn region_inequality_holds<T: Scalar>(region: Region, p: &T, r: &T) -> bool {
    let one = T::one;
    let two = || T::ratio(2, 1);
    let three = || T::ratio(3, 1);
    let one_m_p = one() - p.clone();
    let two_pr = two() * p.clone() * r.clone();
    let loss_sq = one_m_p.clone() * one_m_p.clone(); // (1-p)^2
    let below_half_line = two() * r.clone(); // r <= (1-p)/2  <=>  2r <= 1-p
    let one_m_2p = one() - two() * p.clone();
    // p <= alpha  <=>  p^2 - 3p + 1 >= 0 on [1/3, 1]
    let alpha_quad = p.clone() * p.clone() - three() * p.clone() + one();
    let p_le_alpha = le_with_slack(&T::zero(), &alpha_quad);
    let p_ge_alpha = le_with_slack(&alpha_quad, &T::zero());
    let p_le_half = le_with_slack(&(two() * p.clone()), &one());
    let p_ge_half = le_with_slack(&one(), &(two() * p.clone()));

    match region {
        // (1-p)^2/(2p) <= r <= (1-p)/2
        Region::A => le_with_slack(&loss_sq, &two_pr) && le_with_slack(&below_half_line, &one_m_p),
        // (1-2p)/(2p) <= r <= (1-p)/2 on alpha <= p <= 1/2,
        // or 0 <= r <= (1-p)^2/(2p) on 1/2 <= p <= 1
        Region::B => {
            (p_ge_alpha
                && p_le_half
                && le_with_slack(&one_m_2p, &two_pr)
                && le_with_slack(&below_half_line, &one_m_p))
                || (p_ge_half && le_with_slack(&two_pr, &loss_sq))
        }
        // 1-2p <= r <= (1-p)/2 on 1/3 <= p <= alpha,
        // or 1-2p <= r <= (1-2p)/(2p) on alpha <= p <= 1/2
        Region::C => {
            (p_le_alpha && le_with_slack(&one_m_2p, r) && le_with_slack(&below_half_line, &one_m_p))
                || (p_ge_alpha
                    && p_le_half
                    && le_with_slack(&one_m_2p, r)
                    && le_with_slack(&two_pr, &one_m_2p))
        }
    }
}

/// Region assignment together with the optimal value and sorted input.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T: Scalar> {
    pub label: RegionLabel,
    /// The optimal winning probability, `max(psi1, psi2, psi3)`.
    pub value: T,
    /// All three formula values at the sorted point.
    pub values: [T; 3],
    pub sorted: SortedProbs<T>,
}

/// Sorts the colors, evaluates the three closed forms, and returns the
/// argmax. On ties the label falls to the region whose analytic
/// description contains the point, with display priority A over B over C.
pub fn classify<T: Scalar>(probs: &ProbabilityVector<T>) -> Result<Classification<T>> {
    let sorted = SortedProbs::new(probs)?;
    let values = [
        psi_unchecked(1, &sorted.p, &sorted.r)?,
        psi_unchecked(2, &sorted.p, &sorted.r)?,
        psi_unchecked(3, &sorted.p, &sorted.r)?,
    ];
    let mut best = 0usize;
    for i in 1..3 {
        if values[i] > values[best] {
            best = i;
        }
    }
    let tied: Vec<usize> = (0..3)
        .filter(|&i| (values[best].clone() - values[i].clone()).abs() <= T::tie_tolerance())
        .map(|i| i + 1)
        .collect();

    let region = if tied.len() == 1 {
        Region::from_formula_index(tied[0])?
    } else {
        tied.iter()
            .map(|&i| Region::from_formula_index(i).expect("index from range"))
            .find(|&reg| region_inequality_holds(reg, &sorted.p, &sorted.r))
            .unwrap_or(Region::from_formula_index(tied[0])?)
    };
    let value = values[region.formula_index() - 1].clone();
    Ok(Classification {
        label: RegionLabel { region, tied },
        value,
        values,
        sorted,
    })
}

/// The constant `(3 - sqrt 5) / 2`: the `p` value where the curves
/// `(1-2p)/(2p)` and `(1-p)/2` meet and the region-C description changes
/// pieces.
pub fn alpha() -> f64 {
    (3.0 - 5.0_f64.sqrt()) / 2.0
}

/// Boundary curves of the region map at a fixed `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRecord {
    pub p: f64,
    /// `(1-p)^2 / (2p)`: separates regions A and B for `p >= 1/2`.
    pub ab_curve: f64,
    /// `(1-2p) / (2p)`: separates regions B and C for `alpha <= p <= 1/2`.
    pub bc_curve: f64,
    /// Lower edge of the sorted simplex: `max(1 - 2p, 0)`.
    pub r_lower: f64,
    /// Upper edge of the sorted simplex: `(1-p)/2`.
    pub r_upper: f64,
    /// Whether each separating curve is active (lies inside the simplex
    /// band) at this `p`.
    pub ab_active: bool,
    pub bc_active: bool,
    pub alpha: f64,
}

/// Evaluates the boundary curves of the region map at `p`.
pub fn region_boundaries(p: f64) -> Result<BoundaryRecord> {
    if !(1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::BoundaryDomain { p });
    }
    let ab_curve = (1.0 - p) * (1.0 - p) / (2.0 * p);
    let bc_curve = (1.0 - 2.0 * p) / (2.0 * p);
    Ok(BoundaryRecord {
        p,
        ab_curve,
        bc_curve,
        r_lower: (1.0 - 2.0 * p).max(0.0),
        r_upper: (1.0 - p) / 2.0,
        ab_active: p >= 0.5,
        bc_active: (alpha()..=0.5).contains(&p),
        alpha: alpha(),
    })
}
