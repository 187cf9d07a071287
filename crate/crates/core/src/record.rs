//! Uniform summaries of the different kinds of certificate, for reports.

use crate::expansion::{Cancellation, SignedCertificate};
use crate::geometry::TilingCertificate;
use crate::poly::MonomialPolynomial;
use crate::scalar::QuadScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Containment, volume balance and disjointness of pieces.
    Tiling,
    /// Signed terms summed and compared with an independent value.
    SignedEvaluation,
    /// Opposite-signed boxes paired off; the rest compared with a polynomial.
    Cancellation,
    /// Every copy matched to a reference piece by an exact isometry.
    Congruence,
    /// A polynomial identity checked symbolically.
    Identity,
}

impl CertificateKind {
    pub fn label(self) -> &'static str {
        match self {
            CertificateKind::Tiling => "tiling",
            CertificateKind::SignedEvaluation => "signed_evaluation",
            CertificateKind::Cancellation => "cancellation",
            CertificateKind::Congruence => "congruence",
            CertificateKind::Identity => "identity",
        }
    }
}

/// What a certificate claimed (`expected`), what was measured (`actual`) and
/// whether every check held.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateRecord {
    pub name: String,
    pub kind: CertificateKind,
    pub verdict: bool,
    pub expected: QuadScalar,
    pub actual: QuadScalar,
    pub pieces: usize,
    pub failure: Option<String>,
}

impl CertificateRecord {
    pub fn tiling(name: &str, c: &TilingCertificate) -> Self {
        CertificateRecord {
            name: name.to_string(),
            kind: CertificateKind::Tiling,
            verdict: c.verdict,
            expected: c.container_volume.clone(),
            actual: c.volume_sum(),
            pieces: c.piece_volumes.len(),
            failure: c.failure(),
        }
    }

    pub fn signed(c: &SignedCertificate) -> Self {
        CertificateRecord {
            name: c.name.clone(),
            kind: CertificateKind::SignedEvaluation,
            verdict: c.verdict,
            expected: c.expected.clone(),
            actual: c.net.clone(),
            pieces: c.terms.len(),
            failure: (!c.verdict).then(|| format!("terms sum to {} not {}", c.net, c.expected)),
        }
    }

    /// `target` is the polynomial the leftover terms must form.
    pub fn cancellation(name: &str, c: &Cancellation, target: &MonomialPolynomial, values: &[QuadScalar]) -> Self {
        let pairs_ok = c.pairs_sound();
        let net_ok = &c.net == target;
        let verdict = pairs_ok && net_ok;
        let failure = (!verdict).then(|| {
            if !pairs_ok {
                "a cancelled pair does not cancel within one level".to_string()
            } else {
                format!("net {} differs from {}", c.net, target)
            }
        });
        CertificateRecord {
            name: name.to_string(),
            kind: CertificateKind::Cancellation,
            verdict,
            expected: target.eval(values),
            actual: c.net.eval(values),
            pieces: c.pairs.len() * 2 + c.leftovers.len(),
            failure,
        }
    }

    /// `verified` of `copies` congruence witnesses checked out.
    pub fn congruence(name: &str, copies: usize, verified: usize) -> Self {
        let verdict = copies > 0 && copies == verified;
        CertificateRecord {
            name: name.to_string(),
            kind: CertificateKind::Congruence,
            verdict,
            expected: QuadScalar::from_int(copies as i64),
            actual: QuadScalar::from_int(verified as i64),
            pieces: copies,
            failure: (!verdict).then(|| format!("{} of {} witnesses verified", verified, copies)),
        }
    }

    pub fn identity(name: &str, left: &MonomialPolynomial, right: &MonomialPolynomial, at: &[QuadScalar]) -> Self {
        let verdict = left == right;
        CertificateRecord {
            name: name.to_string(),
            kind: CertificateKind::Identity,
            verdict,
            expected: right.eval(at),
            actual: left.eval(at),
            pieces: left.terms().len(),
            failure: (!verdict).then(|| format!("{} != {}", left, right)),
        }
    }

    /// Test hook: forces a false verdict.
    pub fn corrupt(&mut self) {
        self.verdict = false;
        self.failure = Some("certificate corrupted on request".into());
    }
}
