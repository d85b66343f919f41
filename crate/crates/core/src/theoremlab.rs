//! Executable claim catalog.
//!
//! Each claim is a hypothesis (a conjunction of properties) and a body: an
//! equivalence between conjunctions, or an implication from any of several
//! conjunctions to one. Running a claim over a corpus sorts every loop into
//! vacuous (hypothesis fails), verified, or violated.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::PropertyError;
use crate::loops::FiniteLoop;
use crate::properties::{self, Method};
use crate::term::registry::{self, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    Normal,
    /// The encoding needed a guess; violations are warnings.
    LowConfidence,
    /// Restates a result from elsewhere; violations are warnings.
    Cited,
}

pub type Conj = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Body {
    /// All conjunctions have the same truth value.
    Equivalent(Vec<Conj>),
    /// If any conjunction in `any_of` holds, `then` holds.
    Implies { any_of: Vec<Conj>, then: Conj },
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub hypothesis: Conj,
    pub body: Body,
    /// Registry identity or property the claim is anchored to.
    pub anchor: String,
    pub confidence: Confidence,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Claim {
    /// Every property name mentioned by the claim.
    pub fn properties(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.hypothesis.iter().map(String::as_str).collect();
        match &self.body {
            Body::Equivalent(cs) => out.extend(cs.iter().flatten().map(String::as_str)),
            Body::Implies { any_of, then } => {
                out.extend(any_of.iter().flatten().map(String::as_str));
                out.extend(then.iter().map(String::as_str));
            }
        }
        out
    }
}

fn conj(names: &[&str]) -> Conj {
    names.iter().map(|s| s.to_string()).collect()
}

fn equiv(id: &str, hyp: &[&str], classes: &[&[&str]], anchor: &str) -> Claim {
    Claim {
        id: id.to_string(),
        hypothesis: conj(hyp),
        body: Body::Equivalent(classes.iter().map(|c| conj(c)).collect()),
        anchor: anchor.to_string(),
        confidence: Confidence::Normal,
        note: String::new(),
    }
}

fn implies(id: &str, hyp: &[&str], any_of: &[&[&str]], then: &[&str], anchor: &str) -> Claim {
    Claim {
        id: id.to_string(),
        hypothesis: conj(hyp),
        body: Body::Implies {
            any_of: any_of.iter().map(|c| conj(c)).collect(),
            then: conj(then),
        },
        anchor: anchor.to_string(),
        confidence: Confidence::Normal,
        note: String::new(),
    }
}

impl Claim {
    fn with(mut self, confidence: Confidence, note: &str) -> Claim {
        self.confidence = confidence;
        self.note = note.to_string();
        self
    }
}

const P4A: &str = "4_{11.11=(1.11)1}^{1}";
const P4B: &str = "4_{11.11=(11.1)1}^{1}";
const P4C: &str = "4_{12.22=(1.22)2}^{1,3}";
const P4D: &str = "4_{12.22=(12.2)2}^{1,3}";
const P4E: &str = "4_{12.12=(12.1)2}^{2,2}";
const P4F: &str = "4_{12.12=(1.21)2}^{2,2}";

const UNIV: &str = "universal-osborn";
const LUNIV: &str = "left-universal-osborn";
const RUNIV: &str = "right-universal-osborn";

fn family_claims(id: &str, hyp: &str, family: Family) -> Vec<Claim> {
    properties::family(family)
        .filter(|n| n.entry.group_valid)
        .map(|n| {
            let c = implies(&format!("{id} [{}]", n.entry.name), &[hyp], &[&[]], &[n.entry.name], n.entry.name);
            if n.entry.low_confidence {
                c.with(Confidence::LowConfidence, n.entry.note)
            } else {
                c
            }
        })
        .collect()
}

fn build() -> Vec<Claim> {
    use Confidence::*;
    let mut c = vec![
        equiv("Osborn identities", &[], &[&["osborn"], &["OS0"]], "OS0"),
        equiv("Theorem 1:4", &[], &[&[UNIV], &["OS0'"], &["OS1'"]], "OS0'"),
        equiv("Theorem 1:4.1", &[], &[&[LUNIV], &["OS0^l"], &["OS1^l"]], "OS0^l"),
        equiv("Theorem 1:4.11", &[], &[&[RUNIV], &["OS0^r"], &["OS1^r"]], "OS0^r"),
        implies("Universal implies one-sided", &[UNIV], &[&[]], &[LUNIV, RUNIV], UNIV),
        equiv("Lemma 1:8", &[], &[&[UNIV], &["aut-triple-1"], &["aut-triple-2"]], "aut-triple-1"),
        equiv("Lemma 1:8.1", &[], &[&[LUNIV], &["left-aut-triple-1"], &["left-aut-triple-2"]], "left-aut-triple-1"),
        equiv(
            "Lemma 1:8.11",
            &[],
            &[&[RUNIV], &["right-aut-triple-1"], &["right-aut-triple-2"]],
            "right-aut-triple-1",
        ),
        implies("Theorem 1:9", &[UNIV], &[&[]], &["aut-triple-3"], "aut-triple-3"),
        implies("Theorem 1:9.1", &[LUNIV], &[&[]], &["left-aut-triple-3"], "left-aut-triple-3"),
        implies("Theorem 1:9.11", &[RUNIV], &[&[]], &["right-aut-triple-3"], "right-aut-triple-3"),
    ];
    c.extend(family_claims("Lemma 1:9a", UNIV, Family::Osi));
    c.extend(family_claims("Lemma 1:9.1a", LUNIV, Family::OsiLeft));
    c.extend(family_claims("Lemma 1:9.11a", RUNIV, Family::OsiRight));
    c.extend([
        equiv("Lemma 1:9b", &[UNIV], &[&["3-PAPL"], &[P4A, P4B]], P4A),
        equiv(
            "Lemma 1:9c",
            &[UNIV],
            &[&["3-PAPL"], &[P4A, P4B], &["LSIPL"], &["9c-iv"], &[P4C], &[P4A]],
            "9c-iv",
        ),
        equiv("Corollary 1:9ci", &[UNIV], &[&[P4A], &[P4B]], P4B),
        implies(
            "Corollary 1:9d",
            &[UNIV],
            &[&["LSIPL"], &["RSIPL"], &["3-PAPL"], &[P4C], &[P4A]],
            &["L2BSIPL", "L1BSIPL"],
            "L2BSIPL",
        ),
        equiv("Lemma 1:9.1b", &[LUNIV], &[&["LSIPL"], &["3-PAPL"]], "LSIPL"),
        equiv("Lemma 1:9.1c", &[LUNIV], &[&[P4B], &["9.1c"]], "9.1c"),
        equiv("Corollary 1:9.1ci", &[LUNIV, P4B], &[&["L1BSIPL"], &["LSIPL"]], "L1BSIPL"),
        implies("Corollary 1:9.1ci (second part)", &[LUNIV, P4B], &[&["LSIPL"]], &["L2BSIPL"], "L2BSIPL"),
        implies("Osborn inverse squares", &["osborn"], &[&[]], &["lambda-squared", "rho-squared"], "lambda-squared"),
        equiv("Lemma 1:9.1d", &[LUNIV], &[&["LSIPL"], &[P4C]], P4C),
        equiv("Lemma 1:9.1e", &[LUNIV], &[&["LSIPL"], &[P4A]], P4A),
        equiv("Lemma 1:9.1f", &[LUNIV], &[&["LSIPL", P4D], &["LAP"], &["moufang"]], "LAP"),
        implies("Lemma 1:9.1g", &[LUNIV], &[&[P4E], &[P4F]], &["9.1g"], "9.1g"),
        equiv(
            "Lemma 1:9.1h",
            &["osborn"],
            &[&["LSIPL"], &["RSIPL"], &["J_lambda^2=id"], &["J_rho^2=id"], &["J_rho=J_lambda"]],
            "J_rho=J_lambda",
        ),
        equiv(
            "Corollary 1:9.1i",
            &[LUNIV],
            &[&["LSIPL"], &["RSIPL"], &["3-PAPL"], &["J_rho=J_lambda"], &[P4C], &[P4A]],
            "J_rho=J_lambda",
        ),
        equiv(
            "Corollary 1:9.1j",
            &["cc"],
            &[
                &["power-associative"],
                &["3-PAPL"],
                &["J_rho=J_lambda"],
                &["LSIPL"],
                &["RSIPL"],
                &[P4C],
                &[P4A],
            ],
            "power-associative",
        ),
        equiv("Corollary 1:9.1k", &["cc"], &[&["diassociative"], &["power-associative", P4D]], P4D),
        equiv("Lemma 1:9.11b", &[RUNIV], &[&["RSIPL"], &["9.11b"]], "9.11b"),
        equiv("Lemma 1:9.11c", &[RUNIV], &[&["RSIPL"], &["9.11c"]], "9.11c"),
        equiv("Lemma 1:9.11d (reading A)", &[RUNIV], &[&["RSIPL"], &["9.11d"]], "9.11d").with(
            LowConfidence,
            "statement garbled; identity read literally, equivalence as stated",
        ),
        implies("Lemma 1:9.11d (reading B)", &[RUNIV], &[&["RSIPL"]], &["9.11d", "OSI_01.1.6^r"], "9.11d")
            .with(LowConfidence, "only the direction that the cited OSI_01.1.6^r supports"),
        equiv("Lemma 1:9.11e", &[RUNIV], &[&["9.11e-a"], &["9.11e-b"]], "9.11e-b")
            .with(Normal, "the cited OSI_01.1.8^r is never stated; the equivalence is encoded directly"),
        equiv("Corollary 1:9.11ea", &[RUNIV, "9.11e-b"], &[&["SFAIPL"], &["SWIPL"]], "SWIPL"),
        equiv("Lemma 1:9.11f", &[RUNIV, "RSIPL"], &[&["SFAIPL"], &["9.11f"]], "9.11f"),
        implies("Lemma 1:9.11g", &[RUNIV, "RSIPL"], &[&[]], &["9.11g"], "9.11g"),
        implies("Corollary 1:9.11h", &[RUNIV, "RSIPL"], &[&[]], &["SFAIPL", "J_rho^6=id"], "J_rho^6=id"),
        equiv("Lemma 1:9.11i", &[RUNIV], &[&["9.11i-a"], &["9.11i-b"]], "9.11i-a"),
        equiv("Lemma 1:9.11j", &[RUNIV], &[&["9.11j-a"], &["9.11j-b"]], "9.11j-a"),
        equiv("Lemma 1:9.11k", &[RUNIV], &[&["9.11j-a"], &["9.11k"]], "9.11k"),
        implies("Corollary 1:9.11l", &[RUNIV, "9.11j-a", "RSIPL"], &[&[]], &["SWIPL"], "SWIPL"),
        implies("Moufang form", &["moufang"], &[&[]], &["moufang-form"], "moufang-form"),
        implies(
            "Association chain",
            &[],
            &[&["diassociative"]],
            &["power-associative", "3-PAPL"],
            "power-associative",
        ),
        implies("Association chain (power)", &[], &[&["power-associative"]], &["3-PAPL"], "3-PAPL"),
        implies(
            "Varieties are universal Osborn",
            &[],
            &[&["moufang"], &["extra"], &["cc"], &["universal-wipl"], &["vd-loop"]],
            &[UNIV],
            UNIV,
        )
        .with(Cited, "classical results restated in the concluding remarks"),
        implies("E-map relation", &["osborn"], &[&[]], &["E-lambda", "E-rho"], "E-lambda")
            .with(Cited, "E_x = E_{x^l} = E_{x^r} for the E_x = R_x R_{x^r} convention"),
        implies("Exponent-2 Osborn loops", &["osborn", "exponent-2"], &[&[]], &["associative", "commutative"], "exponent-2")
            .with(Cited, "attributed to an external source"),
    ]);
    c
}

/// The full claim catalog.
pub fn claims() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(build)
}

pub fn claim(id: &str) -> Option<&'static Claim> {
    claims().iter().find(|c| c.id == id)
}

/// Memoized property values for one loop.
pub struct Facts<'a> {
    l: &'a FiniteLoop,
    method: Method,
    memo: HashMap<String, bool>,
}

impl<'a> Facts<'a> {
    pub fn new(l: &'a FiniteLoop, method: Method) -> Self {
        Facts {
            l,
            method,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, name: &str) -> Result<bool, PropertyError> {
        if let Some(&v) = self.memo.get(name) {
            return Ok(v);
        }
        let v = properties::check(self.l, name, self.method)?.holds;
        self.memo.insert(name.to_string(), v);
        Ok(v)
    }

    fn all(&mut self, c: &[String]) -> Result<bool, PropertyError> {
        for name in c {
            if !self.get(name)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Vacuous,
    Verified,
    Violated(String),
}

fn show(c: &[String]) -> String {
    if c.is_empty() {
        "true".to_string()
    } else {
        c.join(" & ")
    }
}

pub fn evaluate(claim: &Claim, facts: &mut Facts<'_>) -> Result<Outcome, PropertyError> {
    if !facts.all(&claim.hypothesis)? {
        return Ok(Outcome::Vacuous);
    }
    match &claim.body {
        Body::Equivalent(classes) => {
            let mut values = Vec::with_capacity(classes.len());
            for c in classes {
                values.push(facts.all(c)?);
            }
            if values.iter().all(|&v| v == values[0]) {
                Ok(Outcome::Verified)
            } else {
                let detail = classes
                    .iter()
                    .zip(&values)
                    .map(|(c, v)| format!("{}={v}", show(c)))
                    .collect::<Vec<_>>()
                    .join(", ");
                Ok(Outcome::Violated(detail))
            }
        }
        Body::Implies { any_of, then } => {
            let mut trigger = None;
            for c in any_of {
                if facts.all(c)? {
                    trigger = Some(c);
                    break;
                }
            }
            let Some(trigger) = trigger else {
                return Ok(Outcome::Verified);
            };
            for name in then {
                if !facts.get(name)? {
                    return Ok(Outcome::Violated(format!("{} holds but {name} fails", show(trigger))));
                }
            }
            Ok(Outcome::Verified)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(rename = "loop")]
    pub loop_name: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub confidence: Confidence,
    pub tested: usize,
    pub vacuous: usize,
    pub verified: usize,
    pub violations: Vec<Violation>,
}

impl ClaimReport {
    fn new(c: &Claim) -> Self {
        ClaimReport {
            claim: c.id.clone(),
            confidence: c.confidence,
            tested: 0,
            vacuous: 0,
            verified: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, loop_name: &str, o: Outcome) {
        self.tested += 1;
        match o {
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Verified => self.verified += 1,
            Outcome::Violated(detail) => self.violations.push(Violation {
                loop_name: loop_name.to_string(),
                detail,
            }),
        }
    }

    /// Violations that count as failures (not warnings).
    pub fn failures(&self) -> usize {
        match self.confidence {
            Confidence::Normal => self.violations.len(),
            _ => 0,
        }
    }
}

pub fn run_claim(claim: &Claim, corpus: &[(String, FiniteLoop)], method: Method) -> Result<ClaimReport, PropertyError> {
    let mut report = ClaimReport::new(claim);
    for (name, l) in corpus {
        let mut facts = Facts::new(l, method);
        report.record(name, evaluate(claim, &mut facts)?);
    }
    Ok(report)
}

/// Runs every claim over every loop. Loops are processed in parallel with
/// shared per-loop memoization; reports list violations in corpus order.
pub fn run_catalog(
    claims: &[Claim],
    corpus: &[(String, FiniteLoop)],
    method: Method,
) -> Result<Vec<ClaimReport>, PropertyError> {
    let outcomes: Vec<Result<Vec<Outcome>, PropertyError>> = corpus
        .par_iter()
        .map(|(_, l)| {
            let mut facts = Facts::new(l, method);
            claims.iter().map(|c| evaluate(c, &mut facts)).collect()
        })
        .collect();
    let mut reports: Vec<ClaimReport> = claims.iter().map(ClaimReport::new).collect();
    for ((name, _), per_loop) in corpus.iter().zip(outcomes) {
        for (report, o) in reports.iter_mut().zip(per_loop?) {
            report.record(name, o);
        }
    }
    Ok(reports)
}

/// Claims whose names do not resolve; empty for a consistent catalog.
pub fn unresolved() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for c in claims() {
        for p in c.properties().into_iter().chain([c.anchor.as_str()]) {
            if properties::canonical_name(p).is_err() && registry::lookup(p).is_none() {
                out.push((c.id.clone(), p.to_string()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::loops::tests::l5;
    use std::collections::HashSet;

    #[test]
    fn catalog_is_consistent() {
        assert_eq!(unresolved(), Vec::<(String, String)>::new());
        let mut ids = HashSet::new();
        for c in claims() {
            assert!(ids.insert(c.id.as_str()), "duplicate claim {}", c.id);
            // anchors name something the claim actually talks about
            assert!(c.properties().contains(&c.anchor.as_str()), "{}", c.id);
        }
    }

    #[test]
    fn claim_shapes() {
        let b = claim("Lemma 1:9b").unwrap();
        assert_eq!(b.hypothesis, conj(&[UNIV]));
        assert_eq!(b.body, Body::Equivalent(vec![conj(&["3-PAPL"]), conj(&[P4A, P4B])]));
        let j = claim("Corollary 1:9.1j").unwrap();
        assert_eq!(j.hypothesis, conj(&["cc"]));
        assert!(matches!(&j.body, Body::Equivalent(cs) if cs.len() == 7));
        let h = claim("Corollary 1:9.11h").unwrap();
        assert_eq!(h.hypothesis, conj(&[RUNIV, "RSIPL"]));
        assert!(matches!(&h.body, Body::Implies { then, .. } if then == &conj(&["SFAIPL", "J_rho^6=id"])));
    }

    #[test]
    fn groups_verify_lemma_9b() {
        let corpus: Vec<(String, FiniteLoop)> =
            corpus::groups().into_iter().filter(|(_, g)| g.order() <= 8).collect();
        let r = run_claim(claim("Lemma 1:9b").unwrap(), &corpus, Method::Both).unwrap();
        assert_eq!(r.verified, corpus.len());
        assert!(r.violations.is_empty());
    }

    #[test]
    fn vacuous_when_hypothesis_fails() {
        let corpus = vec![("L5".to_string(), l5())];
        let r = run_claim(claim("Corollary 1:9.1k").unwrap(), &corpus, Method::Identity).unwrap();
        if !properties::is_cc(&l5()).holds {
            assert_eq!((r.tested, r.vacuous, r.verified), (1, 1, 0));
        }
        assert_eq!(r.tested, r.vacuous + r.verified + r.violations.len());
    }

    #[test]
    fn catalog_run_matches_single_claims() {
        let corpus: Vec<(String, FiniteLoop)> = corpus::groups()
            .into_iter()
            .filter(|(_, g)| g.order() <= 6)
            .chain([("L5".to_string(), l5())])
            .collect();
        let all = run_catalog(claims(), &corpus, Method::Identity).unwrap();
        for (c, r) in claims().iter().zip(&all) {
            assert_eq!(*r, run_claim(c, &corpus, Method::Identity).unwrap());
        }
    }
}
