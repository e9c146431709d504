//! Serializable summaries written by the subcommands. Key names are stable.

use binormix::{
    BoundReport, BoundViolation, ClassificationReport, ModalityBound, Mode, ModeMethod, ModeReport,
    PairType, QPolynomial, QRoot, Vec2,
};
use serde::Serialize;

fn xy(v: Vec2) -> [f64; 2] {
    [v.x, v.y]
}

fn type_name(t: PairType) -> &'static str {
    match t {
        PairType::Type1 => "Type1",
        PairType::Type2 => "Type2",
        PairType::Type3 => "Type3",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalOut {
    pub m: [f64; 2],
    pub s1_sq: f64,
    pub s2_sq: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConicOut {
    pub kind: String,
    /// `[[q11, q12], [q12, q22]]` in canonical coordinates.
    pub q: [[f64; 2]; 2],
    pub l: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspOut {
    pub point: [f64; 2],
    pub bracket: [[f64; 2]; 2],
    pub bracket_width: f64,
    pub cross_left: f64,
    pub cross_right: f64,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyOut {
    pub pair_type: &'static str,
    pub max_modes: usize,
    pub proportional: bool,
    pub proportionality_ratio: Option<f64>,
    pub codirectional: Option<bool>,
    pub shared_mean_eigenvector: bool,
    pub canonical: CanonicalOut,
    pub conic: ConicOut,
    pub cusp: Option<CuspOut>,
    pub notes: Vec<String>,
}

impl From<&ClassificationReport> for ClassifyOut {
    fn from(r: &ClassificationReport) -> Self {
        let mut notes = Vec::new();
        if r.codirectional == Some(true) && !r.shared_eigenvector {
            notes.push(
                "mean offset is an eigenvector of Sigma2 * inverse(Sigma1) but not of each \
                 covariance separately; the singular set is still two lines"
                    .to_string(),
            );
        }
        if r.pair_type == PairType::Type2 && r.shared_eigenvector {
            notes.push(
                "mean offset is a common eigenvector of both covariances, which makes the \
                 pair Type2 whatever the eigenvalues"
                    .to_string(),
            );
        }
        let q = r.conic.q;
        ClassifyOut {
            pair_type: type_name(r.pair_type),
            max_modes: r.pair_type.max_modes(),
            proportional: r.proportional.is_some(),
            proportionality_ratio: r.proportional,
            codirectional: r.codirectional,
            shared_mean_eigenvector: r.shared_eigenvector,
            canonical: CanonicalOut {
                m: xy(r.canonical.m),
                s1_sq: r.canonical.s1_sq,
                s2_sq: r.canonical.s2_sq,
            },
            conic: ConicOut {
                kind: r.conic.kind.to_string(),
                q: [[q.a11, q.a12], [q.a12, q.a22]],
                l: xy(r.conic.l),
            },
            cusp: r.cusp.map(|c| CuspOut {
                point: xy(c.point),
                bracket: [xy(c.bracket[0]), xy(c.bracket[1])],
                bracket_width: c.bracket_width,
                cross_left: c.cross_left,
                cross_right: c.cross_right,
                ambiguous: c.ambiguous,
            }),
            notes,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootOut {
    pub alpha: f64,
    pub tangent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QRootsOut {
    pub pair_type: &'static str,
    pub roots: Vec<RootOut>,
    pub n_roots: usize,
    pub root_bound: usize,
    pub bound: usize,
    pub tangency: bool,
    /// `det(S_alpha)^3 * q(alpha)`, ascending powers of alpha.
    pub numerator_monomial: [f64; 7],
    pub numerator_bernstein: [f64; 7],
}

impl QRootsOut {
    pub fn new(roots: &[QRoot], bound: &ModalityBound, num: &QPolynomial) -> Self {
        QRootsOut {
            pair_type: type_name(bound.pair_type),
            roots: roots
                .iter()
                .map(|r| RootOut {
                    alpha: r.alpha,
                    tangent: r.tangent,
                })
                .collect(),
            n_roots: bound.n_roots,
            root_bound: bound.root_bound,
            bound: bound.bound,
            tangency: bound.tangency,
            numerator_monomial: num.coeffs,
            numerator_bernstein: num.bernstein,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeOut {
    pub location: [f64; 2],
    pub value: f64,
}

impl From<&Mode> for ModeOut {
    fn from(m: &Mode) -> Self {
        ModeOut {
            location: xy(m.location),
            value: m.value,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeReportOut {
    pub method: &'static str,
    pub count: usize,
    pub modes: Vec<ModeOut>,
    pub other_critical: Vec<ModeOut>,
    pub degenerate: bool,
}

impl From<&ModeReport> for ModeReportOut {
    fn from(r: &ModeReport) -> Self {
        ModeReportOut {
            method: match r.method {
                ModeMethod::NewtonSeeded => "newton_seeded",
                ModeMethod::GridOracle => "grid_oracle",
            },
            count: r.count,
            modes: r.modes.iter().map(ModeOut::from).collect(),
            other_critical: r.other_critical.iter().map(ModeOut::from).collect(),
            degenerate: r.degenerate,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModesOut {
    pub c: f64,
    pub newton: ModeReportOut,
    pub grid_oracle: ModeReportOut,
    /// Same count and every mode matched within `agreement_tol`.
    pub methods_agree: bool,
    pub agreement_tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeSummaryOut {
    pub pair_type: &'static str,
    pub cap: usize,
    pub trials: usize,
    pub max_observed: usize,
    /// Mixtures with 0, 1, 2, 3 and 4+ modes.
    pub histogram: [usize; 5],
    pub misclassified: usize,
    pub tangent_roots: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationOut {
    pub mu1: [f64; 2],
    pub sigma1: [f64; 3],
    pub mu2: [f64; 2],
    pub sigma2: [f64; 3],
    pub c: f64,
    pub expected_type: &'static str,
    pub observed_modes: usize,
    pub type_cap: usize,
    pub root_bound: usize,
}

impl From<&BoundViolation> for ViolationOut {
    fn from(v: &BoundViolation) -> Self {
        let s = |g: &binormix::Gaussian2D| {
            let m = g.sigma().sym();
            [m.a11, m.a12, m.a22]
        };
        ViolationOut {
            mu1: xy(v.pair.f1.mu()),
            sigma1: s(&v.pair.f1),
            mu2: xy(v.pair.f2.mu()),
            sigma2: s(&v.pair.f2),
            c: v.c,
            expected_type: type_name(v.expected_type),
            observed_modes: v.observed_modes,
            type_cap: v.type_cap,
            root_bound: v.root_bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanOut {
    pub seed: u64,
    pub trials_per_type: usize,
    pub mixing: Vec<f64>,
    pub include_reference: bool,
    pub types: Vec<TypeSummaryOut>,
    pub violations: Vec<ViolationOut>,
}

impl ScanOut {
    pub fn new(cfg: &binormix::ScanConfig, r: &BoundReport) -> Self {
        ScanOut {
            seed: cfg.seed,
            trials_per_type: cfg.trials_per_type,
            mixing: cfg.mixing.clone(),
            include_reference: cfg.include_reference,
            types: [PairType::Type1, PairType::Type2, PairType::Type3]
                .iter()
                .map(|&t| {
                    let s = r.summary(t);
                    TypeSummaryOut {
                        pair_type: type_name(t),
                        cap: t.max_modes(),
                        trials: s.trials,
                        max_observed: s.max_observed,
                        histogram: s.histogram,
                        misclassified: s.misclassified,
                        tangent_roots: s.tangent_roots,
                    }
                })
                .collect(),
            violations: r.violations.iter().map(ViolationOut::from).collect(),
        }
    }
}
