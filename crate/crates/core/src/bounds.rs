//! Audits of trunk lower bounds for satellite knots against the trunk of a
//! concrete presentation.
//!
//! The trunk of a presentation only bounds the trunk of its knot from
//! above, so an audit can expose a contradiction in the input data but can
//! never show that a bound is sharp.
//!
//! Companion data is read from line-oriented `key=value` records:
//!
//! ```text
//! name=trefoil-2-cable
//! trJ=4
//! n=2
//! m=2
//! mu.1=2
//! provenance=blackboard cable of the standard trefoil
//! ```
//!
//! A record starts at each `name=` line; `#` starts a comment.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::morse::MorseDiagram;
use crate::Rational;

/// Certified invariants of a satellite class: the companion's trunk, the
/// winding and wrapping numbers of the pattern, and optionally `mu(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedDatum {
    pub name: String,
    pub companion_trunk: u64,
    pub winding: u64,
    pub wrapping: u64,
    pub mu: BTreeMap<u32, u64>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    Syntax { line: usize, message: String },
    Missing { name: String, key: &'static str },
    Duplicate { name: String },
    ZeroTrunk { name: String },
    WrappingBelowWinding { name: String, winding: u64, wrapping: u64 },
    MuIncreasing { name: String, a: u32 },
    MuOneNotWrapping { name: String, mu: u64, wrapping: u64 },
    MuOutOfRange { mu: Rational, winding: u64, wrapping: u64 },
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            BoundsError::Missing { name, key } => write!(f, "record `{name}` lacks `{key}`"),
            BoundsError::Duplicate { name } => write!(f, "record `{name}` appears twice"),
            BoundsError::ZeroTrunk { name } => write!(f, "record `{name}`: trJ must be positive"),
            BoundsError::WrappingBelowWinding {
                name,
                winding,
                wrapping,
            } => write!(f, "record `{name}`: wrapping m={wrapping} is below winding n={winding}"),
            BoundsError::MuIncreasing { name, a } => {
                write!(f, "record `{name}`: mu increases at a={a}")
            }
            BoundsError::MuOneNotWrapping { name, mu, wrapping } => {
                write!(f, "record `{name}`: mu.1={mu} differs from m={wrapping}")
            }
            BoundsError::MuOutOfRange { mu, winding, wrapping } => {
                write!(f, "mu={mu} lies outside [n, m] = [{winding}, {wrapping}]")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BoundsError {}

impl CertifiedDatum {
    /// Checks `m >= n`, `trJ > 0`, `mu` non-increasing and `mu(1) = m`.
    pub fn validate(&self) -> Result<(), BoundsError> {
        let name = || self.name.clone();
        if self.companion_trunk == 0 {
            return Err(BoundsError::ZeroTrunk { name: name() });
        }
        if self.wrapping < self.winding {
            return Err(BoundsError::WrappingBelowWinding {
                name: name(),
                winding: self.winding,
                wrapping: self.wrapping,
            });
        }
        let mut prev: Option<u64> = None;
        for (&a, &mu) in &self.mu {
            if prev.is_some_and(|p| mu > p) {
                return Err(BoundsError::MuIncreasing { name: name(), a });
            }
            prev = Some(mu);
        }
        if let Some(&mu) = self.mu.get(&1) {
            if mu != self.wrapping {
                return Err(BoundsError::MuOneNotWrapping {
                    name: name(),
                    mu,
                    wrapping: self.wrapping,
                });
            }
        }
        Ok(())
    }

    /// A trivial companion (unknot, trunk 2) makes every bound vacuous.
    pub fn trivial_companion(&self) -> bool {
        self.companion_trunk <= 2
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name={}", self.name);
        let _ = writeln!(out, "trJ={}", self.companion_trunk);
        let _ = writeln!(out, "n={}", self.winding);
        let _ = writeln!(out, "m={}", self.wrapping);
        for (a, mu) in &self.mu {
            let _ = writeln!(out, "mu.{a}={mu}");
        }
        if !self.provenance.is_empty() {
            let _ = writeln!(out, "provenance={}", self.provenance);
        }
        out
    }
}

/// Parses certified-data records. Every record is validated.
pub fn parse_certified(text: &str) -> Result<Vec<CertifiedDatum>, BoundsError> {
    struct Partial {
        name: String,
        trunk: Option<u64>,
        winding: Option<u64>,
        wrapping: Option<u64>,
        mu: BTreeMap<u32, u64>,
        provenance: String,
    }
    fn finish(p: Partial) -> Result<CertifiedDatum, BoundsError> {
        let missing = |key| BoundsError::Missing {
            name: p.name.clone(),
            key,
        };
        let d = CertifiedDatum {
            companion_trunk: p.trunk.ok_or_else(|| missing("trJ"))?,
            winding: p.winding.ok_or_else(|| missing("n"))?,
            wrapping: p.wrapping.ok_or_else(|| missing("m"))?,
            name: p.name,
            mu: p.mu,
            provenance: p.provenance,
        };
        d.validate()?;
        Ok(d)
    }

    let mut out: Vec<CertifiedDatum> = Vec::new();
    let mut current: Option<Partial> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let syntax = |message: String| BoundsError::Syntax { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected `key=value`, found `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "name" {
            if let Some(p) = current.take() {
                out.push(finish(p)?);
            }
            if value.is_empty() {
                return Err(syntax("empty name".into()));
            }
            if out.iter().any(|d| d.name == value) {
                return Err(BoundsError::Duplicate { name: value.into() });
            }
            current = Some(Partial {
                name: value.into(),
                trunk: None,
                winding: None,
                wrapping: None,
                mu: BTreeMap::new(),
                provenance: String::new(),
            });
            continue;
        }
        let p = current
            .as_mut()
            .ok_or_else(|| syntax(format!("`{key}` before any `name=`")))?;
        let number = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| syntax(format!("`{key}` needs a non-negative integer, found `{v}`")))
        };
        match key {
            "trJ" => p.trunk = Some(number(value)?),
            "n" => p.winding = Some(number(value)?),
            "m" => p.wrapping = Some(number(value)?),
            "provenance" => p.provenance = value.into(),
            _ => match key.strip_prefix("mu.") {
                Some(a) => {
                    let a: u32 = a
                        .parse()
                        .ok()
                        .filter(|a| a % 2 == 1)
                        .ok_or_else(|| syntax(format!("`{key}`: the index must be an odd integer")))?;
                    p.mu.insert(a, number(value)?);
                }
                None => return Err(syntax(format!("unknown key `{key}`"))),
            },
        }
    }
    if let Some(p) = current {
        out.push(finish(p)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    /// `tr(K) >= n tr(J)`.
    Winding,
    /// `tr(K) > m tr(J) / 2`.
    Wrapping,
    /// `tr(K) >= (m + mu) tr(J) / 2`.
    Combined,
}

impl TheoremId {
    pub fn key(self) -> &'static str {
        match self {
            TheoremId::Winding => "winding",
            TheoremId::Wrapping => "wrapping",
            TheoremId::Combined => "combined",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::Winding => "tr(K) >= n*tr(J)",
            TheoremId::Wrapping => "tr(K) > m*tr(J)/2",
            TheoremId::Combined => "tr(K) >= (m+mu)*tr(J)/2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Contradiction,
}

impl Verdict {
    pub fn key(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Contradiction => "CONTRADICTION",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub theorem: TheoremId,
    pub datum: String,
    pub bound: Rational,
    pub strict: bool,
    /// Trunk of the presentation: an upper witness for the knot's trunk.
    pub trunk: u64,
    pub verdict: Verdict,
    /// `trunk - bound`.
    pub margin: Rational,
    /// Width of the presentation, reported without a verdict.
    pub width: u64,
    /// Auxiliary bounds, in a fixed order.
    pub extra: Vec<(&'static str, Rational)>,
    /// Whether the main bound dominates every auxiliary bound.
    pub chain: Option<bool>,
    pub warnings: Vec<String>,
}

impl AuditReport {
    fn new(theorem: TheoremId, sat: &MorseDiagram, d: &CertifiedDatum, bound: Rational, strict: bool) -> Self {
        let trunk = sat.trunk() as u64;
        let t = Rational::from_integer(trunk as i64);
        let holds = if strict { t > bound } else { t >= bound };
        let mut warnings = Vec::new();
        if d.trivial_companion() {
            warnings.push(String::from(
                "trivial companion (trJ <= 2): the inequality assumes a non-trivial companion",
            ));
        }
        AuditReport {
            theorem,
            datum: d.name.clone(),
            bound,
            strict,
            trunk,
            verdict: if holds {
                Verdict::Consistent
            } else {
                Verdict::Contradiction
            },
            margin: t - bound,
            width: sat.width() as u64,
            extra: Vec::new(),
            chain: None,
            warnings,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }

    /// Deterministic `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "theorem={}", self.theorem.key());
        let _ = writeln!(out, "datum={}", self.datum);
        let _ = writeln!(out, "bound={}", self.bound);
        let _ = writeln!(out, "strict={}", self.strict);
        let _ = writeln!(out, "trunk={}", self.trunk);
        let _ = writeln!(out, "verdict={}", self.verdict.key());
        let _ = writeln!(out, "margin={}", self.margin);
        let _ = writeln!(out, "width={}", self.width);
        for (k, v) in &self.extra {
            let _ = writeln!(out, "{k}={v}");
        }
        if let Some(chain) = self.chain {
            let _ = writeln!(out, "chain={chain}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning={w}");
        }
        out
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { ">" } else { ">=" };
        writeln!(f, "{:<10} {}  [{}]", self.theorem.key(), self.theorem.statement(), self.datum)?;
        writeln!(
            f,
            "  trunk {} {rel} {}  margin {}  {}",
            self.trunk,
            self.bound,
            self.margin,
            self.verdict.key()
        )?;
        for (k, v) in &self.extra {
            writeln!(f, "  {k:<14} {v}")?;
        }
        if let Some(chain) = self.chain {
            writeln!(f, "  {:<14} {}", "chain", if chain { "holds" } else { "BROKEN" })?;
        }
        writeln!(f, "  width {} (informational)", self.width)?;
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        f.write_str("  note: a presentation trunk is an upper witness; consistency is not a proof of sharpness\n")
    }
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(n as i64)
}

pub fn audit_winding(sat: &MorseDiagram, d: &CertifiedDatum) -> AuditReport {
    let bound = rat(d.winding) * rat(d.companion_trunk);
    AuditReport::new(TheoremId::Winding, sat, d, bound, false)
}

/// The inequality is strict; equality is reported as a contradiction.
pub fn audit_wrapping(sat: &MorseDiagram, d: &CertifiedDatum) -> AuditReport {
    let bound = rat(d.wrapping) * rat(d.companion_trunk) / 2;
    AuditReport::new(TheoremId::Wrapping, sat, d, bound, true)
}

/// Also reports the weaker bounds `(m + n) tr(J) / 2` and `mu tr(J)` and
/// whether the main bound dominates both.
pub fn audit_combined(sat: &MorseDiagram, d: &CertifiedDatum, mu: Rational) -> Result<AuditReport, BoundsError> {
    if mu < rat(d.winding) || mu > rat(d.wrapping) {
        return Err(BoundsError::MuOutOfRange {
            mu,
            winding: d.winding,
            wrapping: d.wrapping,
        });
    }
    let tr = rat(d.companion_trunk);
    let bound = (rat(d.wrapping) + mu) * tr / 2;
    let by_winding = (rat(d.wrapping) + rat(d.winding)) * tr / 2;
    let by_mu = mu * tr;
    let mut report = AuditReport::new(TheoremId::Combined, sat, d, bound, false);
    report.extra = alloc::vec![("mu", mu), ("bound.m_plus_n", by_winding), ("bound.mu", by_mu)];
    report.chain = Some(bound >= by_winding && bound >= by_mu);
    Ok(report)
}

/// `n tr(J) <= (m + mu) tr(J) / 2 <= m tr(J)`, with the combined bound
/// equal to the wrapping bound when `mu = 0`.
pub fn bound_ordering(d: &CertifiedDatum, mu: Rational) -> bool {
    let tr = rat(d.companion_trunk);
    let winding = rat(d.winding) * tr;
    let combined = (rat(d.wrapping) + mu) * tr / 2;
    let top = rat(d.wrapping) * tr;
    let wrapping = top / 2;
    winding <= combined && combined <= top && (mu != rat(0) || combined == wrapping)
}

/// Every applicable audit for one presentation and datum: winding and
/// wrapping always, combined for each distinct `mu(a)` on record.
pub fn audit_all(sat: &MorseDiagram, d: &CertifiedDatum) -> Vec<AuditReport> {
    let mut out = alloc::vec![audit_winding(sat, d), audit_wrapping(sat, d)];
    let distinct: alloc::collections::BTreeSet<u64> = d.mu.values().copied().collect();
    for mu in distinct {
        if let Ok(r) = audit_combined(sat, d, rat(mu)) {
            out.push(r);
        }
    }
    out
}

pub fn summary_line(reports: &[AuditReport]) -> String {
    let bad = reports.iter().filter(|r| !r.is_consistent()).count();
    format!("{} audits, {} contradictions", reports.len(), bad)
}

impl fmt::Display for CertifiedDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: trJ={} n={} m={}",
            self.name, self.companion_trunk, self.winding, self.wrapping
        )?;
        for (a, mu) in &self.mu {
            write!(f, " mu.{a}={mu}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::MorsePresentation;
    use crate::pattern::{satellite, twist_tangle, whitehead_tangle};

    fn datum(name: &str, trj: u64, n: u64, m: u64, mu: &[(u32, u64)]) -> CertifiedDatum {
        CertifiedDatum {
            name: name.into(),
            companion_trunk: trj,
            winding: n,
            wrapping: m,
            mu: mu.iter().copied().collect(),
            provenance: String::new(),
        }
    }

    fn cable_knot(n: usize) -> MorsePresentation {
        satellite(&MorsePresentation::trefoil(), &twist_tangle(n).unwrap(), 0)
            .unwrap()
            .into_knot()
    }

    #[test]
    fn winding_examples() {
        let r = audit_winding(&cable_knot(2), &datum("c2", 4, 2, 2, &[]));
        assert_eq!((r.bound, r.trunk, r.verdict), (rat(8), 8, Verdict::Consistent));
        assert_eq!(r.margin, rat(0));
        let wh = satellite(&MorsePresentation::trefoil(), &whitehead_tangle(), 0)
            .unwrap()
            .into_knot();
        let r = audit_winding(&wh, &datum("wh", 4, 0, 2, &[]));
        assert_eq!((r.bound, r.verdict), (rat(0), Verdict::Consistent));
        let r = audit_winding(&MorsePresentation::unknot(), &datum("u", 2, 1, 1, &[]));
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn wrapping_is_strict() {
        let wh = satellite(&MorsePresentation::trefoil(), &whitehead_tangle(), 0)
            .unwrap()
            .into_knot();
        let r = audit_wrapping(&wh, &datum("wh", 4, 0, 2, &[]));
        assert_eq!((r.bound, r.trunk, r.verdict), (rat(4), 8, Verdict::Consistent));
        let r = audit_wrapping(&cable_knot(3), &datum("c3", 4, 3, 3, &[]));
        assert_eq!((r.bound, r.trunk, r.verdict), (rat(6), 12, Verdict::Consistent));
        let t = MorsePresentation::trefoil();
        let r = audit_wrapping(&t, &datum("core", 4, 1, 1, &[]));
        assert_eq!(r.bound, rat(2));
        assert!(r.is_consistent());
        // equality fails a strict inequality
        let r = audit_wrapping(&t, &datum("tight", 4, 2, 2, &[]));
        assert_eq!(r.verdict, Verdict::Contradiction);
    }

    #[test]
    fn combined_examples() {
        let wh = satellite(&MorsePresentation::trefoil(), &whitehead_tangle(), 0)
            .unwrap()
            .into_knot();
        let d = datum("wh", 4, 0, 2, &[(1, 2), (3, 2)]);
        let r = audit_combined(&wh, &d, rat(2)).unwrap();
        assert_eq!((r.bound, r.margin, r.verdict), (rat(8), rat(0), Verdict::Consistent));
        let r = audit_combined(&wh, &d, rat(0)).unwrap();
        assert_eq!(r.bound, audit_wrapping(&wh, &d).bound);
        assert!(!r.strict);
        assert!(matches!(
            audit_combined(&wh, &d, rat(3)),
            Err(BoundsError::MuOutOfRange { .. })
        ));
        let c2 = datum("c2", 4, 2, 2, &[(1, 2)]);
        let r = audit_combined(&cable_knot(2), &c2, rat(2)).unwrap();
        assert_eq!(r.bound, audit_winding(&cable_knot(2), &c2).bound);
        assert!(bound_ordering(&d, rat(2)) && bound_ordering(&d, rat(0)) && bound_ordering(&c2, rat(2)));
    }

    #[test]
    fn datum_invariants() {
        assert!(datum("x", 4, 3, 2, &[]).validate().is_err());
        assert!(datum("x", 4, 0, 2, &[(1, 2), (3, 3)]).validate().is_err());
        assert!(datum("x", 4, 0, 2, &[(1, 1)]).validate().is_err());
        assert!(datum("x", 0, 0, 2, &[]).validate().is_err());
        assert!(datum("x", 4, 0, 2, &[(1, 2), (3, 2)]).validate().is_ok());
    }

    #[test]
    fn kv_round_trip() {
        let text = "# companions\nname=wh\ntrJ=4\nn=0\nm=2\nmu.1=2\nmu.3=2\nprovenance=hand\n\nname=c2\ntrJ=4\nn=2\nm=2\n";
        let ds = parse_certified(text).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[0].mu.get(&3), Some(&2));
        let again: String = ds.iter().map(CertifiedDatum::to_kv).collect::<Vec<_>>().join("\n");
        assert_eq!(parse_certified(&again).unwrap(), ds);
    }

    #[test]
    fn kv_errors() {
        let err = |t: &str| parse_certified(t).unwrap_err();
        assert!(matches!(err("trJ=4\n"), BoundsError::Syntax { line: 1, .. }));
        assert!(matches!(err("name=a\ntrJ=x\n"), BoundsError::Syntax { line: 2, .. }));
        assert!(matches!(err("name=a\ntrJ=4\nn=0\n"), BoundsError::Missing { key: "m", .. }));
        assert!(matches!(err("name=a\nmu.2=1\n"), BoundsError::Syntax { line: 2, .. }));
        assert!(matches!(err("name=a\nfoo=1\n"), BoundsError::Syntax { line: 2, .. }));
        assert!(matches!(
            err("name=a\ntrJ=4\nn=0\nm=2\nname=a\ntrJ=4\nn=0\nm=2\n"),
            BoundsError::Duplicate { .. }
        ));
    }

    #[test]
    fn report_text_is_stable() {
        let r = audit_winding(&cable_knot(2), &datum("c2", 4, 2, 2, &[]));
        let kv = r.to_kv();
        assert!(kv.starts_with("theorem=winding\ndatum=c2\nbound=8\nstrict=false\ntrunk=8\nverdict=consistent\nmargin=0\n"));
        assert!(r.to_string().contains("upper witness"));
    }
}
