//! The five q⁻¹-symmetric polynomial families and their terminating basic
//! hypergeometric representations, the z ↔ x coordinate convention, and
//! cross-maps to the normalizations of Ismail and Ismail–Zhang–Zhou.
//!
//! Everything is evaluated in the z variable, where x = ½(z − 1/z); the
//! involution z ↦ −1/z fixes x and leaves every polynomial invariant.
//! Prefactors like q^{-3 binom(n,2)} (−a²bcd)^n are assembled in
//! [`LogComplex`] so lattice arguments z = q^k α far into either tail stay
//! evaluable.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::hyper::{phi_rs, PhiSpec};
use crate::log_complex::{log_sum, LogComplex};
use crate::params::ParamMultiset;
use crate::poch::{binom2, qpoch_finite_log};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which of the five families, ordered by parameter count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// q⁻¹-Askey–Wilson, 4 parameters.
    AskeyWilson,
    /// Continuous dual q⁻¹-Hahn, 3 parameters.
    DualHahn,
    /// q⁻¹-Al-Salam–Chihara, 2 parameters.
    AlSalamChihara,
    /// Continuous big q⁻¹-Hermite, 1 parameter.
    BigHermite,
    /// Continuous q⁻¹-Hermite, no parameters.
    Hermite,
}

impl FamilyKind {
    /// Number of parameters.
    pub fn arity(self) -> usize {
        match self {
            FamilyKind::AskeyWilson => 4,
            FamilyKind::DualHahn => 3,
            FamilyKind::AlSalamChihara => 2,
            FamilyKind::BigHermite => 1,
            FamilyKind::Hermite => 0,
        }
    }

    /// The family one step down the limit chain (one parameter fewer).
    pub fn sub_family(self) -> Option<FamilyKind> {
        match self {
            FamilyKind::AskeyWilson => Some(FamilyKind::DualHahn),
            FamilyKind::DualHahn => Some(FamilyKind::AlSalamChihara),
            FamilyKind::AlSalamChihara => Some(FamilyKind::BigHermite),
            FamilyKind::BigHermite => Some(FamilyKind::Hermite),
            FamilyKind::Hermite => None,
        }
    }

    /// The family one step up the limit chain (one parameter more).
    pub fn super_family(self) -> Option<FamilyKind> {
        match self {
            FamilyKind::AskeyWilson => None,
            FamilyKind::DualHahn => Some(FamilyKind::AskeyWilson),
            FamilyKind::AlSalamChihara => Some(FamilyKind::DualHahn),
            FamilyKind::BigHermite => Some(FamilyKind::AlSalamChihara),
            FamilyKind::Hermite => Some(FamilyKind::BigHermite),
        }
    }

    /// How many distinct terminating representations are implemented.
    pub fn rep_count(self) -> usize {
        match self {
            FamilyKind::AskeyWilson | FamilyKind::DualHahn => 2,
            _ => 1,
        }
    }

    pub fn all() -> [FamilyKind; 5] {
        [
            FamilyKind::AskeyWilson,
            FamilyKind::DualHahn,
            FamilyKind::AlSalamChihara,
            FamilyKind::BigHermite,
            FamilyKind::Hermite,
        ]
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FamilyKind::AskeyWilson => "askey-wilson",
            FamilyKind::DualHahn => "dual-hahn",
            FamilyKind::AlSalamChihara => "al-salam-chihara",
            FamilyKind::BigHermite => "big-hermite",
            FamilyKind::Hermite => "hermite",
        };
        f.write_str(s)
    }
}

/// A family tag with its parameter multiset (arity checked).
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    kind: FamilyKind,
    params: ParamMultiset,
}

impl Family {
    pub fn new(kind: FamilyKind, params: ParamMultiset) -> Result<Self> {
        if params.len() != kind.arity() {
            return Err(QError::InvalidConfig(format!(
                "{kind} needs {} parameters, got {}",
                kind.arity(),
                params.len()
            )));
        }
        Ok(Family { kind, params })
    }

    pub fn askey_wilson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        Self::new(FamilyKind::AskeyWilson, ParamMultiset::new(&[a, b, c, d])?)
    }

    pub fn dual_hahn(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        Self::new(FamilyKind::DualHahn, ParamMultiset::new(&[a, b, c])?)
    }

    pub fn al_salam_chihara(a: Complex64, b: Complex64) -> Result<Self> {
        Self::new(FamilyKind::AlSalamChihara, ParamMultiset::new(&[a, b])?)
    }

    pub fn big_hermite(a: Complex64) -> Result<Self> {
        Self::new(FamilyKind::BigHermite, ParamMultiset::new(&[a])?)
    }

    pub fn hermite() -> Self {
        Family { kind: FamilyKind::Hermite, params: ParamMultiset::empty() }
    }

    #[inline]
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    #[inline]
    pub fn params(&self) -> &ParamMultiset {
        &self.params
    }

    /// Product of all parameters.
    pub fn param_product(&self) -> Complex64 {
        self.params.product()
    }

    /// The same family with its parameters permuted.
    pub fn permuted(&self, perm: &[usize]) -> Result<Family> {
        let entries: Vec<Complex64> = perm.iter().map(|&i| self.params[i]).collect();
        Self::new(self.kind, ParamMultiset::new(&entries)?)
    }

    /// The sub-family obtained by dropping the last parameter.
    pub fn degenerate(&self) -> Result<Family> {
        let kind = self
            .kind
            .sub_family()
            .ok_or_else(|| QError::InvalidConfig("hermite has no sub-family".into()))?;
        let entries = &self.params.entries()[..kind.arity()];
        if kind == FamilyKind::Hermite {
            return Ok(Family::hermite());
        }
        Self::new(kind, ParamMultiset::new(entries)?)
    }

    /// The super-family obtained by appending `extra` as the last parameter.
    pub fn extend(&self, extra: Complex64) -> Result<Family> {
        let kind = self
            .kind
            .super_family()
            .ok_or_else(|| QError::InvalidConfig("askey-wilson has no super-family".into()))?;
        let mut entries = self.params.entries().to_vec();
        entries.push(extra);
        Self::new(kind, ParamMultiset::new(&entries)?)
    }
}

/// Evaluation point in the z variable, z ≠ 0; x = ½(z − 1/z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPoint {
    z: Complex64,
}

impl ZPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if (z.re == 0.0 && z.im == 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(QError::ZeroParameter("z must be nonzero and finite"));
        }
        Ok(ZPoint { z })
    }

    /// From the x variable via the principal branch z = x + √(x² + 1).
    pub fn from_x(x: Complex64) -> Result<Self> {
        Self::new(x + (x * x + ONE).sqrt())
    }

    #[inline]
    pub fn z(self) -> Complex64 {
        self.z
    }

    /// x = ½(z − 1/z).
    #[inline]
    pub fn x(self) -> Complex64 {
        (self.z - self.z.inv()) * 0.5
    }

    /// The involution z ↦ −1/z fixing x.
    pub fn involution(self) -> ZPoint {
        ZPoint { z: -self.z.inv() }
    }
}

/// Representation selector for [`eval_poly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rep {
    /// Production representation. For Askey–Wilson this is the second
    /// terminating ₄φ₃ (its k-dependence stays conditioned for lattice
    /// arguments far into the tails); for dual Hahn the ₃φ₂ with
    /// z-independent denominator parameters.
    Canonical,
    /// The other published terminating representation (Askey–Wilson and
    /// dual Hahn only), retained for cross-checking.
    Alternate,
}

/// Evaluate the degree-n family polynomial at `pt`, returning the result
/// in log form. Use [`eval_poly`] for a plain complex value.
pub fn eval_poly_log(
    fam: &Family,
    n: u32,
    pt: ZPoint,
    ctx: &QContext,
    rep: Rep,
) -> Result<LogComplex> {
    if rep == Rep::Alternate && fam.kind().rep_count() < 2 {
        return Err(QError::InvalidConfig(format!(
            "{} has a single terminating representation",
            fam.kind()
        )));
    }
    if n > ctx.max_poly_degree {
        return Err(QError::InvalidConfig(format!(
            "degree {n} exceeds the configured cap {} (QContext::with_max_poly_degree)",
            ctx.max_poly_degree
        )));
    }
    let q = ctx.q();
    let ql = LogComplex::from_complex(q);
    let z = pt.z();
    let zi = z.inv();
    let ni = n as i64;
    let qmn = ctx.q_pow(-ni); // q^{-n}, the terminating parameter
    // Parameter symmetry lets the evaluation pivot on the largest
    // parameter: the representations amplify by pivot^{-n} against a
    // series value of matching smallness, so a small pivot costs digits.
    let p = pivot_sorted(fam.params());

    let (pref, num, den, arg): (LogComplex, Vec<Complex64>, Vec<Complex64>, Complex64) =
        match (fam.kind(), rep) {
            (FamilyKind::AskeyWilson, Rep::Canonical) => {
                let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
                let pref = ql.powi(-3 * binom2(ni))
                    * LogComplex::from_complex(-a * b * c * d * z).powi(ni)
                    * qpoch_finite_log(-ONE / (a * b), ctx, n)
                    * qpoch_finite_log(-ONE / (c * z), ctx, n)
                    * qpoch_finite_log(-ONE / (d * z), ctx, n);
                let q1n = ctx.q_pow(1 - ni);
                (
                    pref,
                    vec![qmn, z / a, z / b, -q1n * c * d],
                    vec![-ONE / (a * b), -q1n * c * z, -q1n * d * z],
                    q,
                )
            }
            (FamilyKind::AskeyWilson, Rep::Alternate) => {
                let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
                let abcd = a * b * c * d;
                let pref = ql.powi(-3 * binom2(ni))
                    * LogComplex::from_complex(-a * a * b * c * d).powi(ni)
                    * qpoch_finite_log(-ONE / (a * b), ctx, n)
                    * qpoch_finite_log(-ONE / (a * c), ctx, n)
                    * qpoch_finite_log(-ONE / (a * d), ctx, n);
                (
                    pref,
                    vec![qmn, ctx.q_pow(ni - 1) / abcd, z / a, -ONE / (a * z)],
                    vec![-ONE / (a * b), -ONE / (a * c), -ONE / (a * d)],
                    q,
                )
            }
            (FamilyKind::DualHahn, Rep::Canonical) => {
                let (a, b, c) = (p[0], p[1], p[2]);
                let pref = ql.powi(-2 * binom2(ni))
                    * LogComplex::from_complex(-a * b * c).powi(ni)
                    * qpoch_finite_log(-ONE / (a * b), ctx, n)
                    * qpoch_finite_log(-ONE / (a * c), ctx, n);
                (
                    pref,
                    vec![qmn, z / a, -ONE / (a * z)],
                    vec![-ONE / (a * b), -ONE / (a * c)],
                    -ctx.q_pow(ni) / (b * c),
                )
            }
            (FamilyKind::DualHahn, Rep::Alternate) => {
                let (a, b, c) = (p[0], p[1], p[2]);
                let q1n = ctx.q_pow(1 - ni);
                let pref = ql.powi(-binom2(ni))
                    * LogComplex::from_complex(-a).powi(ni)
                    * qpoch_finite_log(z / a, ctx, n)
                    * qpoch_finite_log(-ONE / (a * z), ctx, n);
                (
                    pref,
                    vec![qmn, -q1n * a * b, -q1n * a * c],
                    vec![-q1n * a * z, q1n * a * zi],
                    q,
                )
            }
            (FamilyKind::AlSalamChihara, _) => {
                let (a, b) = (p[0], p[1]);
                let pref = ql.powi(-binom2(ni))
                    * LogComplex::from_complex(-b).powi(ni)
                    * qpoch_finite_log(-ONE / (a * b), ctx, n);
                (
                    pref,
                    vec![qmn, z / a, -ONE / (a * z)],
                    vec![-ONE / (a * b)],
                    ctx.q_pow(ni) * a / b,
                )
            }
            (FamilyKind::BigHermite, _) => {
                let a = p[0];
                // The 3phi0 terms are O(1) while their sum is O(a^n); below
                // the threshold the expansion over the Hermite family keeps
                // full precision (the limit chain drives a as small as 1e-7).
                if a.norm() <= BIG_HERMITE_SMALL_PARAM {
                    return big_hermite_small_param_log(a, n, pt, ctx);
                }
                let pref = LogComplex::from_complex(-a.inv()).powi(ni);
                (pref, vec![qmn, z / a, -ONE / (a * z)], vec![], -ctx.q_pow(ni) * a * a)
            }
            (FamilyKind::Hermite, _) => {
                let pref = LogComplex::from_complex(z).powi(ni);
                (pref, vec![qmn], vec![Complex64::new(0.0, 0.0)], -q / (z * z))
            }
        };

    let spec = PhiSpec::new(
        ParamMultiset::with_zeros(&num)?,
        ParamMultiset::with_zeros(&den)?,
        arg,
        ctx,
    )?;
    let phi = phi_rs(&spec, ctx)?;
    Ok(pref * LogComplex::from_complex(phi.value))
}

/// Evaluate the degree-n family polynomial at `pt` as a complex value.
/// Identical (within tolerance) across representations and invariant
/// under z ↦ −1/z.
pub fn eval_poly(fam: &Family, n: u32, pt: ZPoint, ctx: &QContext, rep: Rep) -> Result<Complex64> {
    Ok(eval_poly_log(fam, n, pt, ctx, rep)?.to_complex())
}

/// Parameters in descending magnitude (stable, so results are
/// reproducible for tied magnitudes).
fn pivot_sorted(params: &ParamMultiset) -> ParamMultiset {
    let mut entries = params.entries().to_vec();
    entries.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
    ParamMultiset::with_zeros(&entries).expect("same length")
}

/// Parameter magnitude below which the big-Hermite evaluation switches to
/// the Hermite-expansion path.
const BIG_HERMITE_SMALL_PARAM: f64 = 0.1;

/// 𝗛ₙ[z;a|q] = Σ_k [n k]_q q^{-k(n-k)-binom(k,2)} (−a)^k 𝗛_{n−k}[z|q].
///
/// Exact finite expansion (the image of the classical big-to-plain
/// q-Hermite connection under q ↦ 1/q, x ↦ ix); its terms scale with a^k,
/// so the k = 0 term carries the Hermite limit with no cancellation.
fn big_hermite_small_param_log(
    a: Complex64,
    n: u32,
    pt: ZPoint,
    ctx: &QContext,
) -> Result<LogComplex> {
    let ql = LogComplex::from_complex(ctx.q());
    let hermite = Family::hermite();
    let qq_n = qpoch_finite_log(ctx.q(), ctx, n);
    let mut terms = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let ki = k as i64;
        let qbinom =
            qq_n / (qpoch_finite_log(ctx.q(), ctx, k) * qpoch_finite_log(ctx.q(), ctx, n - k));
        let t = qbinom
            * ql.powi(-ki * (n as i64 - ki) - binom2(ki))
            * LogComplex::from_complex(-a).powi(ki)
            * eval_poly_log(&hermite, n - k, pt, ctx, Rep::Canonical)?;
        terms.push(t);
    }
    Ok(log_sum(&terms))
}

/// Evaluate the next-higher-arity family with its extra parameter set to
/// the small real `h` — the computational form of the limit chain
/// d → c → b → a → 0.
pub fn eval_via_limit_chain(
    fam: &Family,
    n: u32,
    pt: ZPoint,
    ctx: &QContext,
    h: f64,
) -> Result<Complex64> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(QError::InvalidConfig(format!("h = {h} outside (0, 1e-3]")));
    }
    let bigger = fam.extend(Complex64::new(h, 0.0))?;
    eval_poly(&bigger, n, pt, ctx, Rep::Canonical)
}

/// Ismail's q⁻¹-Al-Salam–Chihara Q_n(x;a,b) rescaled by
/// q^{-binom(n,2)} (−1)^n (q;q)_n; must match the Al-Salam–Chihara
/// evaluation of [`eval_poly`].
pub fn crossmap_ismail_asc(
    n: u32,
    pt: ZPoint,
    a: Complex64,
    b: Complex64,
    ctx: &QContext,
) -> Result<Complex64> {
    let z = pt.z();
    let ni = n as i64;
    let ql = LogComplex::from_complex(ctx.q());
    // Q_n(x;a,b) = a^n (z/a;q)_n / (q;q)_n  2phi1(q^{-n}, -1/(bz); q^{1-n} a/z; q, qb/z);
    // the (q;q)_n cancels against the rescaling factor, leaving
    // q^{-binom(n,2)} (-a)^n (z/a;q)_n  2phi1(...).
    let spec = PhiSpec::new(
        ParamMultiset::with_zeros(&[ctx.q_pow(-ni), -ONE / (b * z)])?,
        ParamMultiset::with_zeros(&[ctx.q_pow(1 - ni) * a / z])?,
        ctx.q() * b / z,
        ctx,
    )?;
    let phi = phi_rs(&spec, ctx)?;
    let pref = ql.powi(-binom2(ni))
        * LogComplex::from_complex(-a).powi(ni)
        * qpoch_finite_log(z / a, ctx, n);
    Ok((pref * LogComplex::from_complex(phi.value)).to_complex())
}

/// Which Ismail–Zhang–Zhou normalization to cross-map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IzzMap {
    /// V_n(x;a,b,c|q), the continuous dual q⁻¹-Hahn normalization.
    DualHahnV,
    /// p_n(x,{a,b,c,d}), the q⁻¹-Askey–Wilson normalization.
    AskeyWilsonP,
}

/// Evaluate the Ismail–Zhang–Zhou normalization at q-shifted parameters
/// and apply the published rescaling; must match [`eval_poly`] for the
/// corresponding family.
pub fn crossmap_izz(
    n: u32,
    pt: ZPoint,
    params: &ParamMultiset,
    ctx: &QContext,
    which: IzzMap,
) -> Result<Complex64> {
    let q = ctx.q();
    let ql = LogComplex::from_complex(q);
    let z = pt.z();
    let ni = n as i64;
    let qmn = ctx.q_pow(-ni);
    let q2 = q * q;
    match which {
        IzzMap::DualHahnV => {
            if params.len() != 3 {
                return Err(QError::InvalidConfig("V_n cross-map needs 3 parameters".into()));
            }
            let (a, b, c) = (params[0], params[1], params[2]);
            // V_n(x; qa, qb, qc | q)
            let (ta, tb, tc) = (q * a, q * b, q * c);
            let spec = PhiSpec::new(
                ParamMultiset::with_zeros(&[qmn, q * z / ta, -q / (ta * z)])?,
                ParamMultiset::with_zeros(&[-q2 / (ta * tb), -q2 / (ta * tc)])?,
                -ctx.q_pow(ni + 2) / (tb * tc),
                ctx,
            )?;
            let phi = phi_rs(&spec, ctx)?;
            let v = LogComplex::from_complex(ta / q).powi(ni)
                * (qpoch_finite_log(-q2 / (ta * tc), ctx, n)
                    / qpoch_finite_log(-q2 / (tb * tc), ctx, n))
                * LogComplex::from_complex(phi.value);
            let rescale = ql.powi(-2 * binom2(ni))
                * LogComplex::from_complex(-b * c).powi(ni)
                * qpoch_finite_log(-ONE / (a * b), ctx, n)
                * qpoch_finite_log(-ONE / (b * c), ctx, n);
            Ok((rescale * v).to_complex())
        }
        IzzMap::AskeyWilsonP => {
            if params.len() != 4 {
                return Err(QError::InvalidConfig("p_n cross-map needs 4 parameters".into()));
            }
            let (a, b, c, d) = (params[0], params[1], params[2], params[3]);
            let (ta, tb, tc, td) = (q * a, q * b, q * c, q * d);
            let tprod = ta * tb * tc * td;
            let spec = PhiSpec::new(
                ParamMultiset::with_zeros(&[
                    qmn,
                    ctx.q_pow(ni + 3) / tprod,
                    q * z / ta,
                    -q / (ta * z),
                ])?,
                ParamMultiset::with_zeros(&[
                    -q2 / (ta * tb),
                    -q2 / (ta * tc),
                    -q2 / (ta * td),
                ])?,
                q,
                ctx,
            )?;
            let phi = phi_rs(&spec, ctx)?;
            let v = LogComplex::from_complex(ta / q).powi(ni)
                * qpoch_finite_log(-q2 / (ta * tb), ctx, n)
                * qpoch_finite_log(-q2 / (ta * tc), ctx, n)
                * qpoch_finite_log(-q2 / (ta * td), ctx, n)
                * LogComplex::from_complex(phi.value);
            let rescale =
                ql.powi(-3 * binom2(ni)) * LogComplex::from_complex(-a * b * c * d).powi(ni);
            Ok((rescale * v).to_complex())
        }
    }
}

/// Both sides of the reciprocal-parameter identity
/// 𝗽ₙ[z;a,b,c,d|q] = q^{-3 binom(n,2)} (iabcd)^n pₙ[iz; −i/a, −i/b, −i/c, −i/d | q],
/// where pₙ is the classical Askey–Wilson polynomial in its own
/// z-parameterization (x = ½(z′ + 1/z′)). Equality within 1e-9 relative
/// is the test contract.
pub fn reciprocal_param_identity(
    n: u32,
    pt: ZPoint,
    params: &ParamMultiset,
    ctx: &QContext,
) -> Result<(Complex64, Complex64)> {
    if params.len() != 4 {
        return Err(QError::InvalidConfig("reciprocal identity needs 4 parameters".into()));
    }
    let fam = Family::new(FamilyKind::AskeyWilson, params.clone())?;
    let lhs = eval_poly(&fam, n, pt, ctx, Rep::Canonical)?;

    let ni = n as i64;
    let ql = LogComplex::from_complex(ctx.q());
    let zp = I * pt.z();
    let (a, b, c, d) = (params[0], params[1], params[2], params[3]);
    let cl = classical_askey_wilson(zp, -I / a, -I / b, -I / c, -I / d, ctx, n)?;
    let rhs = (ql.powi(-3 * binom2(ni))
        * LogComplex::from_complex(I * a * b * c * d).powi(ni)
        * cl)
        .to_complex();
    Ok((lhs, rhs))
}

/// Classical Askey–Wilson polynomial pₙ[z′; A,B,C,D | q] in log form
/// (the ₄φ₃ with prefactor A^{−n} (AB, AC, AD;q)_n).
fn classical_askey_wilson(
    zp: Complex64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    ctx: &QContext,
    n: u32,
) -> Result<LogComplex> {
    let ni = n as i64;
    let spec = PhiSpec::new(
        ParamMultiset::with_zeros(&[
            ctx.q_pow(-ni),
            ctx.q_pow(ni - 1) * a * b * c * d,
            a * zp,
            a / zp,
        ])?,
        ParamMultiset::with_zeros(&[a * b, a * c, a * d])?,
        ctx.q(),
        ctx,
    )?;
    let phi = phi_rs(&spec, ctx)?;
    Ok(LogComplex::from_complex(a).powi(-ni)
        * qpoch_finite_log(a * b, ctx, n)
        * qpoch_finite_log(a * c, ctx, n)
        * qpoch_finite_log(a * d, ctx, n)
        * LogComplex::from_complex(phi.value))
}
