use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{catalog, ScalarFunction};
use crate::means::REPRESENTING_TOL;

/// The inequalities the harness knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "young")]
    Young,
    #[serde(rename = "fujii-1.2")]
    Fujii,
    #[serde(rename = "tominaga-1.2thm")]
    Tominaga,
    #[serde(rename = "thm-2.1")]
    SandwichChain,
    #[serde(rename = "remark-2.2")]
    GeneralMeans,
    #[serde(rename = "cor-2.3")]
    SpectrumChain,
    #[serde(rename = "cor-2.6")]
    GeometricChain,
    #[serde(rename = "thm-3.4")]
    MonotoneFunction,
    #[serde(rename = "cor-3.5")]
    PowerMeans,
    #[serde(rename = "norm-chain")]
    NormChain,
    #[serde(rename = "seo-3.2.1")]
    Seo,
    #[serde(rename = "ando-hiai")]
    AndoHiai,
    #[serde(rename = "cor-3.6")]
    KwongTransform,
    #[serde(rename = "cor-3.8")]
    ConvexTransform,
    #[serde(rename = "remark-3.9")]
    ConvexTransformGeometric,
}

/// How a theorem's operands are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMode {
    /// `mI <= A, B <= MI` with known `m, M`.
    Spectrum,
    /// `B = A^{1/2} X A^{1/2}`, with `s, t` the tight sandwich scalars.
    Sandwich,
    /// As `Sandwich`, but `s <= 1 <= t` is enforced by widening.
    Straddle,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::Young,
        TheoremId::Fujii,
        TheoremId::Tominaga,
        TheoremId::SandwichChain,
        TheoremId::GeneralMeans,
        TheoremId::SpectrumChain,
        TheoremId::GeometricChain,
        TheoremId::MonotoneFunction,
        TheoremId::PowerMeans,
        TheoremId::NormChain,
        TheoremId::Seo,
        TheoremId::AndoHiai,
        TheoremId::KwongTransform,
        TheoremId::ConvexTransform,
        TheoremId::ConvexTransformGeometric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Young => "young",
            TheoremId::Fujii => "fujii-1.2",
            TheoremId::Tominaga => "tominaga-1.2thm",
            TheoremId::SandwichChain => "thm-2.1",
            TheoremId::GeneralMeans => "remark-2.2",
            TheoremId::SpectrumChain => "cor-2.3",
            TheoremId::GeometricChain => "cor-2.6",
            TheoremId::MonotoneFunction => "thm-3.4",
            TheoremId::PowerMeans => "cor-3.5",
            TheoremId::NormChain => "norm-chain",
            TheoremId::Seo => "seo-3.2.1",
            TheoremId::AndoHiai => "ando-hiai",
            TheoremId::KwongTransform => "cor-3.6",
            TheoremId::ConvexTransform => "cor-3.8",
            TheoremId::ConvexTransformGeometric => "remark-3.9",
        }
    }

    /// Parses an id; `tominaga` and `seo` are accepted as short forms.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "tominaga" => return Ok(TheoremId::Tominaga),
            "seo" => return Ok(TheoremId::Seo),
            _ => {}
        }
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }

    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::Young => "A !_a B <= A #_a B <= A V_a B",
            TheoremId::Fujii => "K(h)^{-1/2} (A V B) <= A # B <= K(h)^{1/2} (A ! B)",
            TheoremId::Tominaga => "A V_a B <= S(h) (A #_a B)",
            TheoremId::SandwichChain => "(A V_a B) / lambda <= A #_b B <= mu (A !_a B)",
            TheoremId::GeneralMeans => "(A sigma_a B) / lambda <= A #_b B <= mu (A tau_a B)",
            TheoremId::SpectrumChain => "(A V_a B) / lambda <= A #_b B <= lambda (A !_a B), lambda from m, M",
            TheoremId::GeometricChain => "(A V_a B) / lambda <= A # B <= lambda (A !_a B), lambda from m, M",
            TheoremId::MonotoneFunction => "f(A) V_a f(B) <= lambda f(A #_b B)",
            TheoremId::PowerMeans => "A^p V_a B^p <= lambda^p (A #_b B)^p",
            TheoremId::NormChain => "|||A^p #_a B^p||| <= |||A^p V_a B^p||| <= lambda^p |||(A #_b B)^p|||",
            TheoremId::Seo => "|||A^p #_a B^p||| <= S(h)^p |||(A #_a B)^p|||",
            TheoremId::AndoHiai => "|||A^p #_a B^p||| <= |||(A #_a B)^p|||, p >= 1",
            TheoremId::KwongTransform => "A^p f(A^p) V_a B^p f(B^p) <= lambda G^p f(G^p), G = A #_b B",
            TheoremId::ConvexTransform => "g(A^p) V_a g(B^p) <= lambda g((A #_b B)^p)",
            TheoremId::ConvexTransformGeometric => "g(A^p) #_a g(B^p) <= lambda g((A #_b B)^p)",
        }
    }

    pub fn sampling(self) -> SamplingMode {
        match self {
            TheoremId::Young
            | TheoremId::Fujii
            | TheoremId::Tominaga
            | TheoremId::SpectrumChain
            | TheoremId::GeometricChain
            | TheoremId::Seo
            | TheoremId::AndoHiai => SamplingMode::Spectrum,
            TheoremId::SandwichChain | TheoremId::GeneralMeans => SamplingMode::Sandwich,
            _ => SamplingMode::Straddle,
        }
    }

    /// Key under which the variant's function is labelled, if it takes one.
    fn function_key(self) -> Option<&'static str> {
        match self {
            TheoremId::MonotoneFunction | TheoremId::KwongTransform => Some("f"),
            TheoremId::ConvexTransform | TheoremId::ConvexTransformGeometric => Some("g"),
            _ => None,
        }
    }

    fn takes_exponent(self) -> bool {
        matches!(
            self,
            TheoremId::PowerMeans
                | TheoremId::NormChain
                | TheoremId::Seo
                | TheoremId::AndoHiai
                | TheoremId::KwongTransform
                | TheoremId::ConvexTransform
                | TheoremId::ConvexTransformGeometric
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A mean `σ_α` for the general-means chain: one of the weighted families,
/// or a fixed Kubo-Ando mean given by a catalog representing function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    Function(String),
}

impl MeanKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "arithmetic" | "arith" => MeanKind::Arithmetic,
            "geometric" | "geo" => MeanKind::Geometric,
            "harmonic" | "harm" => MeanKind::Harmonic,
            id => {
                catalog::lookup(id)?;
                MeanKind::Function(id.to_string())
            }
        })
    }

    pub fn as_str(&self) -> &str {
        match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
            MeanKind::Function(id) => id,
        }
    }

    pub(crate) fn resolve(&self) -> Result<Option<ScalarFunction>> {
        let MeanKind::Function(id) = self else {
            return Ok(None);
        };
        let f = catalog::lookup(id)?;
        let at_one = f.eval(1.0);
        if !((at_one - 1.0).abs() <= REPRESENTING_TOL) {
            return Err(Error::RepresentingFunction {
                function: id.clone(),
                reason: format!("f(1) = {at_one}, expected 1"),
            });
        }
        Ok(Some(f))
    }
}

impl Serialize for MeanKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One concrete check: a theorem plus the parameters that select a variant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MeanKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<MeanKind>,
    /// Multiplier applied to λ; anything other than 1 is a deliberately
    /// broken shadow check.
    #[serde(skip_serializing_if = "is_one")]
    pub lambda_scale: f64,
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

impl Check {
    pub fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            function: None,
            p: None,
            sigma: None,
            tau: None,
            lambda_scale: 1.0,
        }
    }

    pub fn with_function(mut self, id: impl Into<String>) -> Self {
        self.function = Some(id.into());
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_means(mut self, sigma: MeanKind, tau: MeanKind) -> Self {
        self.sigma = Some(sigma);
        self.tau = Some(tau);
        self
    }

    pub fn with_lambda_scale(mut self, scale: f64) -> Self {
        self.lambda_scale = scale;
        self
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let (Some(key), Some(f)) = (self.theorem.function_key(), &self.function) {
            parts.push(format!("{key}={f}"));
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        if let Some(s) = &self.sigma {
            parts.push(format!("sigma={}", s.as_str()));
        }
        if let Some(t) = &self.tau {
            parts.push(format!("tau={}", t.as_str()));
        }
        if self.lambda_scale != 1.0 {
            parts.push(format!("lambda*{}", self.lambda_scale));
        }
        if parts.is_empty() {
            self.theorem.as_str().to_string()
        } else {
            format!("{}[{}]", self.theorem, parts.join(","))
        }
    }

    /// Parses either a bare id (expanding to its default variants) or a
    /// label such as `cor-3.5[p=0.7]` or `thm-3.4[f=log1p]`.
    pub fn parse(spec: &str) -> Result<Vec<Check>> {
        let spec = spec.trim();
        if spec == "all" {
            return Ok(Self::suite());
        }
        let Some(open) = spec.find('[') else {
            return Ok(Self::defaults(TheoremId::parse(spec)?));
        };
        let body = spec[open + 1..]
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated variant in `{spec}`")))?;
        let mut check = Check::new(TheoremId::parse(&spec[..open])?);
        let (mut sigma, mut tau) = (None, None);
        for item in body.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{item}`")))?;
            match k.trim() {
                "f" | "g" => check.function = Some(v.trim().to_string()),
                "p" => {
                    check.p = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent `{v}`")))?,
                    )
                }
                "sigma" => sigma = Some(MeanKind::parse(v.trim())?),
                "tau" => tau = Some(MeanKind::parse(v.trim())?),
                other => return Err(Error::Parse(format!("unknown variant key `{other}`"))),
            }
        }
        check.sigma = sigma;
        check.tau = tau;
        check.validate()?;
        Ok(vec![check])
    }

    /// Default variants run for a theorem id.
    pub fn defaults(theorem: TheoremId) -> Vec<Check> {
        let base = Check::new(theorem);
        let with_p = |ps: &[f64]| ps.iter().map(|&p| base.clone().with_p(p)).collect::<Vec<_>>();
        let fp = |fs: &[&str], ps: &[f64]| {
            fs.iter()
                .flat_map(|f| ps.iter().map(|&p| Check::new(theorem).with_function(*f).with_p(p)))
                .collect::<Vec<_>>()
        };
        match theorem {
            TheoremId::GeneralMeans => [
                (MeanKind::Geometric, MeanKind::Geometric),
                (MeanKind::Arithmetic, MeanKind::Harmonic),
                (MeanKind::Geometric, MeanKind::Harmonic),
            ]
            .into_iter()
            .map(|(s, t)| base.clone().with_means(s, t))
            .collect(),
            TheoremId::MonotoneFunction => ["identity", "sqrt", "power:0.3", "log1p"]
                .iter()
                .map(|f| base.clone().with_function(*f))
                .collect(),
            TheoremId::PowerMeans => with_p(&[0.0, 0.5, 1.0]),
            TheoremId::NormChain | TheoremId::Seo => with_p(&[0.5, 1.0]),
            TheoremId::AndoHiai => with_p(&[1.0, 2.0, 3.0]),
            TheoremId::KwongTransform => fp(&["sinh_inv"], &[0.25, 0.5]),
            TheoremId::ConvexTransform | TheoremId::ConvexTransformGeometric => {
                fp(&["square", "inverse"], &[0.25, 0.5])
            }
            _ => vec![base],
        }
    }

    /// Every default variant of every theorem.
    pub fn suite() -> Vec<Check> {
        TheoremId::ALL.into_iter().flat_map(Self::defaults).collect()
    }

    pub(crate) fn resolve_function(&self) -> Result<Option<ScalarFunction>> {
        self.function.as_deref().map(catalog::lookup).transpose()
    }

    /// Checks that the variant satisfies its theorem's hypotheses.
    pub fn validate(&self) -> Result<()> {
        let t = self.theorem;
        if !(self.lambda_scale > 0.0 && self.lambda_scale.is_finite()) {
            return Err(Error::invalid(format!("lambda scale must be positive, got {}", self.lambda_scale)));
        }
        match (t.function_key(), &self.function) {
            (Some(_), None) => return Err(Error::invalid(format!("{t} needs a function"))),
            (None, Some(_)) => return Err(Error::invalid(format!("{t} takes no function"))),
            _ => {}
        }
        match (t.takes_exponent(), self.p) {
            (true, None) => return Err(Error::invalid(format!("{t} needs an exponent p"))),
            (false, Some(_)) => return Err(Error::invalid(format!("{t} takes no exponent"))),
            _ => {}
        }
        if let Some(p) = self.p {
            let ok = match t {
                TheoremId::PowerMeans | TheoremId::NormChain | TheoremId::Seo => (0.0..=1.0).contains(&p),
                TheoremId::AndoHiai => p >= 1.0 && p.is_finite(),
                _ => (0.0..=0.5).contains(&p),
            };
            if !ok {
                return Err(Error::invalid(format!("exponent p = {p} is outside the range allowed by {t}")));
            }
        }
        if let Some(f) = self.resolve_function()? {
            let c = f.claims();
            let (ok, need) = match t {
                TheoremId::MonotoneFunction => (c.nonneg_operator_monotone, "non-negative operator monotone"),
                TheoremId::KwongTransform => (c.kwong, "Kwong"),
                _ => (c.operator_convex, "operator convex"),
            };
            if !ok {
                return Err(Error::invalid(format!("{t} requires a {need} function, `{}` is not flagged so", f.id())));
            }
        }
        if t == TheoremId::GeneralMeans {
            match (&self.sigma, &self.tau) {
                (Some(s), Some(u)) => {
                    s.resolve()?;
                    u.resolve()?;
                }
                _ => return Err(Error::invalid("remark-2.2 needs both sigma and tau")),
            }
        } else if self.sigma.is_some() || self.tau.is_some() {
            return Err(Error::invalid(format!("{t} takes no sigma/tau means")));
        }
        Ok(())
    }
}
