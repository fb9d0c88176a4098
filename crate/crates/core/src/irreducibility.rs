//! The arithmetical irreducibility test on the Newton polytope of the discriminant.
//!
//! For `Δ = Σ {L_i / M_i}` with increasing slopes put `H_0 = 1`,
//! `H_i = 1 + M_1 + ... + M_i`, `γ_i = (H_{i-1} / M_i) L_i` and
//! `W_i = H_g Z^d + Z γ_1 + ... + Z γ_i`. The polytope passes when every
//! `H_i / H_{i-1}` is an integer equal to `[W_i : W_{i-1}]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{Comparison, ExpVec, Rat};
use crate::geometry::{ChainDecomp, ChainFailure, Polytope};
use crate::lattice::{Base, Index, Lattice};
use crate::poly::{discriminant_fv, is_monomial_times_unit, slice_v0, weierstrass_check, MPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    IrreducibleQo,
    NotIrreducibleQo,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::IrreducibleQo => "IRREDUCIBLE_QO",
            Verdict::NotIrreducibleQo => "NOT_IRREDUCIBLE_QO",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailReason {
    NotChain,
    HRatioNotInteger,
    IndexMismatch,
    SlopesNotIncreasing,
    NotQoDiscriminant,
}

impl FailReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailReason::NotChain => "NOT_CHAIN",
            FailReason::HRatioNotInteger => "H_RATIO_NOT_INTEGER",
            FailReason::IndexMismatch => "INDEX_MISMATCH",
            FailReason::SlopesNotIncreasing => "SLOPES_NOT_INCREASING",
            FailReason::NotQoDiscriminant => "NOT_QO_DISCRIMINANT",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IReport {
    pub is_quasi_ordinary: bool,
    pub chain: Option<ChainDecomp>,
    /// `H_0, ..., H_g`.
    pub h: Vec<u64>,
    pub gamma: Vec<ExpVec>,
    /// `[W_i : W_{i-1}]` for every `i` that was reached.
    pub indices: Vec<Index>,
    /// `H_i / H_{i-1}` while these are integers.
    pub n_seq: Vec<u64>,
    pub char_exponents: Option<Vec<ExpVec>>,
    pub verdict: Verdict,
    pub fail_reason: Option<FailReason>,
    /// 1-based position of the failing step, when meaningful.
    pub fail_at: Option<usize>,
}

impl IReport {
    pub fn is_irreducible(&self) -> bool {
        self.verdict == Verdict::IrreducibleQo
    }

    fn failed(chain: Option<ChainDecomp>, reason: FailReason, at: Option<usize>) -> Self {
        IReport {
            is_quasi_ordinary: true,
            chain,
            h: Vec::new(),
            gamma: Vec::new(),
            indices: Vec::new(),
            n_seq: Vec::new(),
            char_exponents: None,
            verdict: Verdict::NotIrreducibleQo,
            fail_reason: Some(reason),
            fail_at: at,
        }
    }

    pub fn to_json(&self) -> Value {
        let vecs = |v: &[ExpVec]| -> Value { v.iter().map(expvec_json).collect() };
        json!({
            "verdict": self.verdict.as_str(),
            "isQuasiOrdinary": self.is_quasi_ordinary,
            "chain": self.chain.as_ref().map(|c| c.pairs.iter().map(|(l, m)| json!({"L": l, "M": m})).collect::<Vec<_>>()),
            "H": self.h,
            "gamma": vecs(&self.gamma),
            "indices": self.indices,
            "nSeq": self.n_seq,
            "charExponents": self.char_exponents.as_ref().map(|h| vecs(h)),
            "failReason": self.fail_reason.map(|r| r.as_str()),
            "failAt": self.fail_at,
        })
    }
}

pub fn expvec_json(v: &ExpVec) -> Value {
    Value::Array(v.entries().iter().map(|x| Value::String(x.to_string())).collect())
}

fn list<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for IReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict.as_str())?;
        if let Some(r) = self.fail_reason {
            match self.fail_at {
                Some(i) => writeln!(f, "reason: {} at i={i}", r.as_str())?,
                None => writeln!(f, "reason: {}", r.as_str())?,
            }
        }
        writeln!(f, "quasi-ordinary: {}", if self.is_quasi_ordinary { "yes" } else { "no" })?;
        if let Some(c) = &self.chain {
            writeln!(f, "polytope: {c}")?;
        }
        if !self.h.is_empty() {
            writeln!(f, "H: ({})", list(&self.h))?;
        }
        if !self.gamma.is_empty() {
            writeln!(f, "gamma: {}", list(&self.gamma))?;
        }
        if !self.indices.is_empty() {
            writeln!(f, "indices: ({})", list(&self.indices))?;
        }
        if let Some(h) = &self.char_exponents {
            writeln!(f, "characteristic exponents: {}", if h.is_empty() { "none".into() } else { list(h) })?;
        }
        Ok(())
    }
}

fn w_lattice(d: usize, hg: u64, gamma: &[ExpVec]) -> Result<Lattice> {
    Lattice::from_expvecs(d, Base::ScaledZd(hg), gamma)
}

/// Runs the test on a polytope in `R^{d+1}` whose last axis is `V`.
pub fn i_polytope_test(p: &Polytope) -> Result<IReport> {
    let d = p.dim() - 1;
    let chain = match p.vertex_chain() {
        Ok(c) => c,
        Err(ChainFailure::NotChain) => return Ok(IReport::failed(None, FailReason::NotChain, None)),
        Err(ChainFailure::SlopesNotIncreasing { at }) => {
            return Ok(IReport::failed(None, FailReason::SlopesNotIncreasing, Some(at)))
        }
    };
    let mut h = vec![1u64];
    for (_, m) in &chain.pairs {
        let last = *h.last().expect("nonempty");
        h.push(last + m);
    }
    let g = chain.len();
    let mut report = IReport::failed(Some(chain.clone()), FailReason::NotChain, None);
    report.h = h.clone();
    report.fail_reason = None;
    for i in 1..=g {
        if h[i] % h[i - 1] != 0 {
            report.fail_reason = Some(FailReason::HRatioNotInteger);
            report.fail_at = Some(i);
            break;
        }
        report.n_seq.push(h[i] / h[i - 1]);
    }
    for (i, (l, m)) in chain.pairs.iter().enumerate() {
        let factor = Rat::new(BigInt::from(h[i]), BigInt::from(*m));
        let gi = ExpVec::new(l.iter().map(|&x| &factor * BigInt::from(x)).collect()).expect("nonnegative");
        report.gamma.push(gi);
    }
    if report.fail_reason.is_some() {
        return Ok(report);
    }
    let hg = h[g];
    let mut prev = w_lattice(d, hg, &[])?;
    for i in 1..=g {
        let cur = w_lattice(d, hg, &report.gamma[..i])?;
        let idx = cur.relative_index(&prev)?;
        let expected = Index::finite(h[i] / h[i - 1]);
        if idx != expected && report.fail_reason.is_none() {
            report.fail_reason = Some(FailReason::IndexMismatch);
            report.fail_at = Some(i);
        }
        report.indices.push(idx);
        prev = cur;
    }
    report.verdict = if report.fail_reason.is_none() { Verdict::IrreducibleQo } else { Verdict::NotIrreducibleQo };
    if report.is_irreducible() {
        report.char_exponents = Some(recover_char_exponents(&report)?);
    }
    Ok(report)
}

/// Characteristic exponents from a passing report.
pub fn recover_char_exponents(report: &IReport) -> Result<Vec<ExpVec>> {
    if !report.is_irreducible() && report.fail_reason != Some(FailReason::NotQoDiscriminant) {
        return Err(Error::invalid("exponents can only be recovered from a passing report"));
    }
    let g = report.gamma.len();
    if g == 0 {
        return Ok(Vec::new());
    }
    let n = report.h[g];
    let inv_n = Rat::new(BigInt::from(1), BigInt::from(n));
    let tilde: Vec<Vec<Rat>> = report.gamma.iter().map(|v| v.entries().iter().map(|x| x * &inv_n).collect()).collect();
    let mut hs: Vec<Vec<Rat>> = vec![tilde[0].clone()];
    for i in 1..g {
        let n_prev = Rat::from_integer(BigInt::from(report.n_seq[i - 1]));
        let hi: Vec<Rat> =
            (0..tilde[i].len()).map(|j| &tilde[i][j] - &n_prev * &tilde[i - 1][j] + &hs[i - 1][j]).collect();
        hs.push(hi);
    }
    let hs = hs
        .into_iter()
        .map(|v| ExpVec::new(v).map_err(|_| Error::internal("recovered exponent has a negative entry")))
        .collect::<Result<Vec<_>>>()?;
    let check = validate_exponent_sequence(&hs)?;
    if !check.ok {
        return Err(Error::internal(format!("recovered exponents violate {:?}", check.violation)));
    }
    if check.n != report.n_seq {
        return Err(Error::internal("recovered exponents give a different index sequence"));
    }
    // W_i = n N_i
    let d = hs[0].dim();
    for i in 1..=g {
        let w = w_lattice(d, n, &report.gamma[..i])?;
        let scaled: Vec<ExpVec> = hs[..i].iter().map(|h| h.scale_int(n)).collect();
        let nn = Lattice::from_expvecs(d, Base::ScaledZd(n), &scaled)?;
        if !(w.contains_lattice(&nn)? && nn.contains_lattice(&w)?) {
            return Err(Error::internal("W_i differs from n N_i"));
        }
    }
    Ok(hs)
}

/// Result of checking that `h_1 < ... < h_g` and `h_i ∉ N_{i-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqValidation {
    pub ok: bool,
    /// `N_0 = Z^d, N_1, ..., N_g` (up to the first violation).
    pub lattices: Vec<Lattice>,
    /// `n_i = [N_i : N_{i-1}]`.
    pub n: Vec<u64>,
    /// Condition name (`"C1"` or `"C2"`) and 1-based position.
    pub violation: Option<(&'static str, usize)>,
}

impl SeqValidation {
    pub fn degree(&self) -> u64 {
        self.n.iter().product()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.violation {
            Some((condition, at)) => Err(Error::InvalidSequence { condition, at }),
            None => Ok(self),
        }
    }
}

pub fn validate_exponent_sequence(h: &[ExpVec]) -> Result<SeqValidation> {
    let d = h.first().ok_or_else(|| Error::invalid("empty exponent sequence"))?.dim();
    let mut out = SeqValidation { ok: true, lattices: vec![Lattice::zd(d)], n: Vec::new(), violation: None };
    for (i, hi) in h.iter().enumerate() {
        if hi.dim() != d {
            return Err(Error::DimensionMismatch { left: hi.dim(), right: d });
        }
        if i > 0 && h[i - 1].partial_leq(hi)? != Comparison::Less {
            out.ok = false;
            out.violation = Some(("C1", i + 1));
            return Ok(out);
        }
        let prev = out.lattices.last().expect("nonempty");
        let order = prev.order_in_quotient(hi.entries())?;
        if order == BigInt::from(1) {
            out.ok = false;
            out.violation = Some(("C2", i + 1));
            return Ok(out);
        }
        let next = prev.extend(&[hi.entries().to_vec()])?;
        out.n.push(order.to_u64().ok_or_else(|| Error::invalid("lattice index too large"))?);
        out.lattices.push(next);
    }
    Ok(out)
}

/// The full pipeline on a Weierstrass polynomial in `X1..Xd, Y`.
pub fn test_polynomial(f: &MPoly<Rat>) -> Result<IReport> {
    weierstrass_check(f)?;
    let disc = discriminant_fv(f)?;
    test_discriminant(&disc)
}

/// The test on an already computed `D_f(X, V)`.
pub fn test_discriminant(disc: &MPoly<Rat>) -> Result<IReport> {
    let qo = is_monomial_times_unit(&slice_v0(disc)?).is_some();
    let p = Polytope::newton(disc)?;
    let mut report = i_polytope_test(&p)?;
    report.is_quasi_ordinary = qo;
    if report.is_irreducible() && !qo {
        report.verdict = Verdict::NotIrreducibleQo;
        report.fail_reason = Some(FailReason::NotQoDiscriminant);
        report.char_exponents = None;
    }
    Ok(report)
}
