//! The cross-section `f(κ)` of generic coadjoint orbits, the polarization
//! `h = a⋄ ⊕ s ⊕ v⁺` at `f`, its exact verification, recovery of `κ` from
//! the Casimirs, the canonical chart and moment-fiber membership.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{in_span, linalg, span_equal, RatMatrix, Rational};
use crate::chops::{casimir, casimir_levels, HessenbergPoint};
use crate::error::{Error, Result};
use crate::liestruct::{elementary, epsilon, half, pi_b_minus, Decomposition};

fn flat(m: &RatMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

/// A point `f(κ)` of the cross-section.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossSectionPoint {
    pub n: usize,
    pub kappa: Vec<Rational>,
    pub f: RatMatrix,
}

impl CrossSectionPoint {
    pub fn as_hessenberg(&self) -> HessenbergPoint {
        HessenbergPoint::new(self.f.clone()).expect("cross-section points are Hessenberg")
    }
}

/// `κ_r` sits at diagonal positions `r` and `n−r+1`; the anti-diagonal
/// below the diagonal carries ones.
pub fn build_cross_section(n: usize, kappa: &[Rational]) -> Result<CrossSectionPoint> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let big_r = half(n);
    if kappa.len() != n - big_r {
        return Err(Error::LengthMismatch {
            expected: n - big_r,
            got: kappa.len(),
        });
    }
    let mut f = epsilon::<Rational>(n);
    for i in 1..=n {
        f[(i - 1, i - 1)] = kappa[i.min(n + 1 - i) - 1].clone();
    }
    for r in 1..=big_r {
        f[(n - r, r - 1)] = Rational::one();
    }
    Ok(CrossSectionPoint {
        n,
        kappa: kappa.to_vec(),
        f,
    })
}

/// Bases attached to the polarization at the cross-section.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationData {
    pub n: usize,
    pub a_diamond: Vec<RatMatrix>,
    pub s: Vec<RatMatrix>,
    pub v_plus: Vec<RatMatrix>,
    pub v_minus: Vec<RatMatrix>,
    /// `a⋄ ∪ s ∪ v⁺`.
    pub h: Vec<RatMatrix>,
    /// `{e_rr − e_{n−r+1,n−r+1}} ∪ (v⁻)ᵀ`, inside `b₋`.
    pub h_perp: Vec<RatMatrix>,
}

impl PolarizationData {
    pub fn new(n: usize) -> Result<Self> {
        let d = Decomposition::new(n)?;
        let e = |&(i, j): &(usize, usize)| elementary::<Rational>(n, i, j);
        let a_diamond = d.a_diamond_matrices();
        let s: Vec<RatMatrix> = d.s.iter().map(e).collect();
        let v_plus: Vec<RatMatrix> = d.v_plus.iter().map(e).collect();
        let v_minus: Vec<RatMatrix> = d.v_minus.iter().map(e).collect();
        let h = a_diamond.iter().chain(&s).chain(&v_plus).cloned().collect();
        let mut h_perp: Vec<RatMatrix> = (1..=d.big_r)
            .map(|r| &elementary(n, r, r) - &elementary(n, n - r + 1, n - r + 1))
            .collect();
        h_perp.extend(v_minus.iter().map(RatMatrix::transpose));
        Ok(PolarizationData {
            n,
            a_diamond,
            s,
            v_plus,
            v_minus,
            h,
            h_perp,
        })
    }

    pub fn dim_h(&self) -> usize {
        self.h.len()
    }

    /// `π_{b₋}[ξ, f − ε]` for every `ξ` in the `h` basis.
    pub fn infinitesimal_images(&self, f: &CrossSectionPoint) -> Vec<RatMatrix> {
        let z = &f.f - &epsilon(self.n);
        self.h.iter().map(|xi| pi_b_minus(&xi.commutator(&z))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub n: usize,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    /// Each `a⋄` basis vector annihilates `f`.
    pub a_diamond_annihilates: bool,
    /// The kernel equals `span a⋄`.
    pub kernel_is_a_diamond: bool,
}

impl IsotropyReport {
    pub fn passed(&self) -> bool {
        self.a_diamond_annihilates && self.kernel_is_a_diamond && self.kernel_dim == self.expected_dim
    }
}

/// Kernel of the linearized action `ξ ↦ π_{b₋}[ξ, f − ε]` on `b`.
pub fn isotropy_check(f: &CrossSectionPoint) -> Result<IsotropyReport> {
    let n = f.n;
    let z = &f.f - &epsilon(n);
    let b_basis: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let images: Vec<Vec<Rational>> = b_basis
        .iter()
        .map(|&(i, j)| flat(&pi_b_minus(&elementary::<Rational>(n, i, j).commutator(&z))))
        .collect();
    let map = RatMatrix::from_fn(n * n, b_basis.len(), |row, col| images[col][row].clone());
    let kernel: Vec<Vec<Rational>> = linalg::nullspace(&map)
        .into_iter()
        .map(|coeffs| {
            let mut m = RatMatrix::zeros(n, n);
            for (c, &(i, j)) in coeffs.iter().zip(&b_basis) {
                m[(i - 1, j - 1)] = c.clone();
            }
            flat(&m)
        })
        .collect();
    let d = Decomposition::new(n)?;
    let a_diamond: Vec<Vec<Rational>> = d.a_diamond_matrices().iter().map(flat).collect();
    let annihilates = d
        .a_diamond_matrices::<Rational>()
        .iter()
        .all(|a| pi_b_minus(&a.commutator(&z)).is_zero());
    Ok(IsotropyReport {
        n,
        kernel_dim: kernel.len(),
        expected_dim: n - d.big_r,
        a_diamond_annihilates: annihilates,
        kernel_is_a_diamond: span_equal(&kernel, &a_diamond)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionResult {
    pub condition: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PukanszkyReport {
    pub n: usize,
    pub kappa: Vec<Rational>,
    pub conditions: Vec<ConditionResult>,
}

impl PukanszkyReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }
}

/// Exact verification of the four polarization conditions at `f(κ)`.
pub fn pukanszky_check(n: usize, kappa: &[Rational]) -> Result<PukanszkyReport> {
    let f = build_cross_section(n, kappa)?;
    let pol = PolarizationData::new(n)?;
    let h_flat: Vec<Vec<Rational>> = pol.h.iter().map(flat).collect();

    let mut stable = true;
    for a in &pol.a_diamond {
        for h in &pol.h {
            stable &= in_span(&flat(&a.commutator(h)), &h_flat)?;
        }
    }

    let mut isotropic = true;
    for (k, x) in pol.h.iter().enumerate() {
        for y in &pol.h[k + 1..] {
            isotropic &= f.f.trace_pairing(&x.commutator(y)).is_zero();
        }
    }

    let rank_h = linalg::span_rank(&h_flat)?;
    let iso = isotropy_check(&f)?;
    let dim_b = n * (n + 1) / 2;
    let dims_ok = 2 * rank_h == dim_b + iso.kernel_dim && iso.passed();

    let images: Vec<Vec<Rational>> = pol.infinitesimal_images(&f).iter().map(flat).collect();
    let perp: Vec<Vec<Rational>> = pol.h_perp.iter().map(flat).collect();
    let fills_perp = span_equal(&images, &perp)?;

    let cond = |name: &str, pass: bool, detail: String| ConditionResult {
        condition: name.to_string(),
        pass,
        detail,
    };
    Ok(PukanszkyReport {
        n,
        kappa: kappa.to_vec(),
        conditions: vec![
            cond("stability", stable, "[a⋄, h] ⊆ h".into()),
            cond("isotropy", isotropic, "(f, [h, h]) = 0".into()),
            cond(
                "dimension",
                dims_ok,
                format!("2·{rank_h} = {} + {}", dim_b, iso.kernel_dim),
            ),
            cond(
                "pukanszky",
                fills_perp,
                format!("span π_b−[h, f−ε] = span h^⊥ (dim {})", linalg::span_rank(&perp)?),
            ),
        ],
    })
}

/// The values `(Tr X, I(1,1), …, I(1,⌊(n−1)/2⌋))`.
pub fn casimir_vector(x: &RatMatrix) -> Result<Vec<Rational>> {
    let mut out = vec![x.trace()];
    for r in casimir_levels(x.rows()) {
        out.push(casimir(x, 1, r)?);
    }
    Ok(out)
}

/// The `κ` whose cross-section point has the same Casimirs as `X`.
pub fn kappa_from_casimirs(x: &HessenbergPoint) -> Result<Vec<Rational>> {
    let n = x.n();
    let k = n - half(n);
    let target = casimir_vector(x.matrix())?;
    // The Casimirs of f(κ) are affine in κ; read off the map by probing.
    let zero = vec![Rational::zero(); k];
    let c0 = casimir_vector(&build_cross_section(n, &zero)?.f)?;
    let mut lin = RatMatrix::zeros(k, k);
    for col in 0..k {
        let mut e = zero.clone();
        e[col] = Rational::one();
        let c = casimir_vector(&build_cross_section(n, &e)?.f)?;
        for row in 0..k {
            lin[(row, col)] = &c[row] - &c0[row];
        }
    }
    let rhs: Vec<Rational> = target.iter().zip(&c0).map(|(t, c)| t - c).collect();
    let kappa = linalg::solve(&lin, &rhs)?.ok_or(Error::Singular)?;
    let check = casimir_vector(&build_cross_section(n, &kappa)?.f)?;
    if check != target {
        return Err(Error::NotInSubspace("recovered κ does not reproduce the Casimirs".into()));
    }
    Ok(kappa)
}

/// A named coordinate of the canonical chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// `a_i`, i = 1..n−R.
    A(usize),
    /// `q_{0,i}`, i = 1..R.
    Q0(usize),
    /// `q_{k,r}` at `(n−r+1, r+k)`.
    Q(usize, usize),
    /// `p_{0,r}` at `(n−r+1, r)`.
    P0(usize),
    /// `p_{k,j}` at `(j+k, j)`.
    P(usize, usize),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::A(i) => write!(f, "a{i}"),
            Slot::Q0(i) => write!(f, "q0_{i}"),
            Slot::Q(k, r) => write!(f, "q_{k}_{r}"),
            Slot::P0(r) => write!(f, "p0_{r}"),
            Slot::P(k, j) => write!(f, "p_{k}_{j}"),
        }
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown chart slot {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let pair = |t: &str| -> Result<(usize, usize)> {
            let (a, b) = t.split_once('_').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        if let Some(t) = s.strip_prefix("q0_") {
            Ok(Slot::Q0(num(t)?))
        } else if let Some(t) = s.strip_prefix("p0_") {
            Ok(Slot::P0(num(t)?))
        } else if let Some(t) = s.strip_prefix("q_") {
            let (k, r) = pair(t)?;
            Ok(Slot::Q(k, r))
        } else if let Some(t) = s.strip_prefix("p_") {
            let (k, j) = pair(t)?;
            Ok(Slot::P(k, j))
        } else if let Some(t) = s.strip_prefix('a') {
            Ok(Slot::A(num(t)?))
        } else {
            Err(bad())
        }
    }
}

/// Every chart slot for size `n`.
pub fn chart_slots(n: usize) -> Vec<Slot> {
    let big_r = half(n);
    let mut slots: Vec<Slot> = (1..=n - big_r).map(Slot::A).collect();
    slots.extend((1..=big_r).map(Slot::Q0));
    for r in 1..=big_r {
        slots.extend((1..=n - 2 * r).map(|k| Slot::Q(k, r)));
    }
    slots.extend((1..=big_r).map(Slot::P0));
    for j in 1..=big_r {
        slots.extend((1..).take_while(|k| 2 * j + k < n + 1).map(|k| Slot::P(k, j)));
    }
    slots
}

/// Chart coordinates of one lower Hessenberg point.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub n: usize,
    pub slots: BTreeMap<Slot, Rational>,
}

impl ChartPoint {
    pub fn get(&self, s: Slot) -> Result<&Rational> {
        self.slots.get(&s).ok_or_else(|| Error::MissingSlot(s.to_string()))
    }

    /// The chart base point: `a = κ`, `p_{0,r} = 1`, all else zero.
    pub fn base(n: usize, kappa: &[Rational]) -> Result<Self> {
        if kappa.len() != n - half(n) {
            return Err(Error::LengthMismatch {
                expected: n - half(n),
                got: kappa.len(),
            });
        }
        let slots = chart_slots(n)
            .into_iter()
            .map(|s| {
                let v = match s {
                    Slot::A(i) => kappa[i - 1].clone(),
                    Slot::P0(_) => Rational::one(),
                    _ => Rational::zero(),
                };
                (s, v)
            })
            .collect();
        Ok(ChartPoint { n, slots })
    }
}

impl Serialize for ChartPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let named: BTreeMap<String, &Rational> = self.slots.iter().map(|(k, v)| (k.to_string(), v)).collect();
        named.serialize(serializer)
    }
}

/// Deserializes a bare slot map; `n` is inferred from the diagonal slots.
impl<'de> Deserialize<'de> for ChartPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let named = BTreeMap::<String, Rational>::deserialize(deserializer)?;
        let mut slots = BTreeMap::new();
        for (k, v) in named {
            slots.insert(k.parse::<Slot>().map_err(D::Error::custom)?, v);
        }
        let ka = slots.keys().filter(|s| matches!(s, Slot::A(_))).count();
        let kq = slots.keys().filter(|s| matches!(s, Slot::Q0(_))).count();
        Ok(ChartPoint { n: ka + kq, slots })
    }
}

pub fn chart_pack(c: &ChartPoint) -> Result<HessenbergPoint> {
    let n = c.n;
    let big_r = half(n);
    let mut x = epsilon::<Rational>(n);
    for i in 1..=big_r {
        let a = c.get(Slot::A(i))?;
        let q = c.get(Slot::Q0(i))?;
        x[(i - 1, i - 1)] = a + q;
        x[(n - i, n - i)] = a - q;
    }
    if n % 2 == 1 {
        x[(big_r, big_r)] = c.get(Slot::A(big_r + 1))?.clone();
    }
    for s in chart_slots(n) {
        let (i, j) = match s {
            Slot::A(_) | Slot::Q0(_) => continue,
            Slot::Q(k, r) => (n - r + 1, r + k),
            Slot::P0(r) => (n - r + 1, r),
            Slot::P(k, j) => (j + k, j),
        };
        x[(i - 1, j - 1)] = c.get(s)?.clone();
    }
    HessenbergPoint::new(x)
}

pub fn chart_unpack(x: &HessenbergPoint) -> ChartPoint {
    let n = x.n();
    let m = x.matrix();
    let big_r = half(n);
    let half_q = Rational::new(1, 2);
    let slots = chart_slots(n)
        .into_iter()
        .map(|s| {
            let v = match s {
                Slot::A(i) if i <= big_r => (&m[(i - 1, i - 1)] + &m[(n - i, n - i)]) * &half_q,
                Slot::A(i) => m[(i - 1, i - 1)].clone(),
                Slot::Q0(i) => (&m[(i - 1, i - 1)] - &m[(n - i, n - i)]) * &half_q,
                Slot::Q(k, r) => m[(n - r, r + k - 1)].clone(),
                Slot::P0(r) => m[(n - r, r - 1)].clone(),
                Slot::P(k, j) => m[(j + k - 1, j - 1)].clone(),
            };
            (s, v)
        })
        .collect();
    ChartPoint { n, slots }
}

/// Whether `ε + π_{b₋}(b⁻¹(ℓ − ε)b)` lies in `f + h^⊥`.
pub fn fiber_membership(b: &RatMatrix, ell: &HessenbergPoint, f: &CrossSectionPoint) -> Result<bool> {
    let n = f.n;
    if b.rows() != n || b.cols() != n || ell.n() != n {
        return Err(Error::DimensionMismatch("b, ℓ and f sizes differ".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if !b[(i, j)].is_zero() {
                return Err(Error::NotInSubspace("b is not upper triangular".into()));
            }
        }
        if b[(i, i)].is_zero() {
            return Err(Error::Singular);
        }
        if !b[(i, i)].is_positive() {
            return Err(Error::NotPositive(format!("b diagonal entry {}", i + 1)));
        }
    }
    let eps = epsilon::<Rational>(n);
    let binv = b.inverse()?;
    let moved = &eps + &pi_b_minus(&(&(&binv * &(ell.matrix() - &eps)) * b));
    let pol = PolarizationData::new(n)?;
    let perp: Vec<Vec<Rational>> = pol.h_perp.iter().map(flat).collect();
    in_span(&flat(&(&moved - &f.f)), &perp)
}
