//! Loop property predicates.
//!
//! Every registry identity is a property under its registry name. On top of
//! those come structural properties (universality, closures, autotopism
//! families); see [`structural_names`].

use serde::Serialize;

use crate::error::PropertyError;
use crate::isotopy::{
    self, autotopism_failure, left_principal_isotopes, right_principal_isotopes, IsotopeSpec,
    PseudoConvention,
};
use crate::loops::FiniteLoop;
use crate::term::registry::{self, NamedIdentity};
use crate::term::{holds, CheckResult, Identity};

/// How universality is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Sweep the characterizing identity.
    #[default]
    Identity,
    /// Check the base property on every principal isotope.
    Bruteforce,
    /// Run both; disagreement is an error.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportMethod {
    Identity,
    Bruteforce,
    Both,
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Set when the failure was found in an isotope rather than the loop itself.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isotope: Option<IsotopeSpec>,
    pub assignment: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub method: ReportMethod,
}

impl PropertyReport {
    fn from_check(property: &str, r: CheckResult, isotope: Option<IsotopeSpec>, method: ReportMethod) -> Self {
        PropertyReport {
            property: property.to_string(),
            holds: r.holds,
            witness: r.counterexample.map(|assignment| Witness { isotope, assignment }),
            method,
        }
    }

    fn structural(property: &str, failure: Option<Vec<(&str, usize)>>) -> Self {
        PropertyReport {
            property: property.to_string(),
            holds: failure.is_none(),
            witness: failure.map(|a| Witness {
                isotope: None,
                assignment: a.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            }),
            method: ReportMethod::Structural,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseMap {
    Lambda,
    Rho,
}

/// Properties that are not a single registry identity.
pub fn structural_names() -> &'static [&'static str] {
    &[
        "osborn",
        "universal-osborn",
        "left-universal-osborn",
        "right-universal-osborn",
        "cc",
        "extra",
        "universal-wipl",
        "power-associative",
        "diassociative",
        "vd-loop",
        "aut-triple-1",
        "aut-triple-2",
        "aut-triple-3",
        "left-aut-triple-1",
        "left-aut-triple-2",
        "left-aut-triple-3",
        "right-aut-triple-1",
        "right-aut-triple-2",
        "right-aut-triple-3",
    ]
}

fn alias(name: &str) -> &str {
    match name {
        "group" | "associativity" => "associative",
        "CC" => "cc",
        "LSIP" => "LSIPL",
        "RSIP" => "RSIPL",
        "WIPL" => "WIP",
        other => other,
    }
}

/// Resolves a property name (with aliases) to its canonical form.
pub fn canonical_name(name: &str) -> Result<&'static str, PropertyError> {
    let name = alias(name);
    if let Some(s) = structural_names().iter().find(|s| **s == name) {
        return Ok(s);
    }
    registry::lookup(name)
        .map(|n| n.entry.name)
        .ok_or_else(|| PropertyError::UnknownProperty(name.to_string()))
}

/// Rough cost rank used to order filters: number of swept variables, with
/// isotope enumeration counted as two extra.
pub fn cost(name: &str) -> usize {
    match alias(name) {
        "osborn" | "cc" | "extra" | "power-associative" | "vd-loop" => 3,
        "diassociative" => 4,
        "universal-wipl" | "left-universal-osborn" | "right-universal-osborn" => 4,
        "left-aut-triple-1" | "left-aut-triple-2" | "left-aut-triple-3" => 4,
        "right-aut-triple-1" | "right-aut-triple-2" | "right-aut-triple-3" => 4,
        "universal-osborn" | "aut-triple-1" | "aut-triple-2" | "aut-triple-3" => 5,
        other => registry::lookup(other).map_or(5, |n| n.identity.vars().len()),
    }
}

fn registry_identity(name: &str) -> &'static Identity {
    &registry::lookup(name)
        .unwrap_or_else(|| panic!("registry entry {name} is missing"))
        .identity
}

fn identity_report(l: &FiniteLoop, name: &str) -> PropertyReport {
    PropertyReport::from_check(name, holds(l, registry_identity(name)), None, ReportMethod::Identity)
}

/// The first report that fails, else a passing report under `property`.
fn all_of(property: &str, reports: impl IntoIterator<Item = PropertyReport>, method: ReportMethod) -> PropertyReport {
    for r in reports {
        if !r.holds {
            return PropertyReport {
                property: property.to_string(),
                ..r
            };
        }
    }
    PropertyReport {
        property: property.to_string(),
        holds: true,
        witness: None,
        method,
    }
}

pub fn is_osborn(l: &FiniteLoop) -> PropertyReport {
    all_of("osborn", [identity_report(l, "OS1")], ReportMethod::Identity)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Universality {
    Full,
    Left,
    Right,
}

impl Universality {
    fn name(self) -> &'static str {
        match self {
            Universality::Full => "universal-osborn",
            Universality::Left => "left-universal-osborn",
            Universality::Right => "right-universal-osborn",
        }
    }

    fn identity(self) -> &'static str {
        match self {
            Universality::Full => "OS0'",
            Universality::Left => "OS0^l",
            Universality::Right => "OS0^r",
        }
    }
}

fn universal_by_identity(l: &FiniteLoop, kind: Universality) -> PropertyReport {
    all_of(kind.name(), [identity_report(l, kind.identity())], ReportMethod::Identity)
}

fn universal_by_isotopes(l: &FiniteLoop, kind: Universality) -> PropertyReport {
    let os1 = registry_identity("OS1");
    let check = |(spec, iso): (IsotopeSpec, FiniteLoop)| {
        PropertyReport::from_check(kind.name(), holds(&iso, os1), Some(spec), ReportMethod::Bruteforce)
    };
    match kind {
        Universality::Full => all_of(kind.name(), isotopy::all_principal_isotopes(l).map(check), ReportMethod::Bruteforce),
        Universality::Left => all_of(kind.name(), left_principal_isotopes(l).map(check), ReportMethod::Bruteforce),
        Universality::Right => all_of(kind.name(), right_principal_isotopes(l).map(check), ReportMethod::Bruteforce),
    }
}

fn universal(l: &FiniteLoop, kind: Universality, method: Method) -> Result<PropertyReport, PropertyError> {
    match method {
        Method::Identity => Ok(universal_by_identity(l, kind)),
        Method::Bruteforce => Ok(universal_by_isotopes(l, kind)),
        Method::Both => {
            let by_id = universal_by_identity(l, kind);
            let by_iso = universal_by_isotopes(l, kind);
            if by_id.holds != by_iso.holds {
                return Err(PropertyError::MethodDisagreement {
                    property: kind.name().to_string(),
                    identity: by_id.holds,
                    bruteforce: by_iso.holds,
                });
            }
            Ok(PropertyReport {
                method: ReportMethod::Both,
                ..by_id
            })
        }
    }
}

pub fn is_universal_osborn_identity(l: &FiniteLoop) -> PropertyReport {
    universal_by_identity(l, Universality::Full)
}

pub fn is_universal_osborn_bruteforce(l: &FiniteLoop) -> PropertyReport {
    universal_by_isotopes(l, Universality::Full)
}

pub fn is_left_universal_osborn(l: &FiniteLoop, method: Method) -> Result<PropertyReport, PropertyError> {
    universal(l, Universality::Left, method)
}

pub fn is_right_universal_osborn(l: &FiniteLoop, method: Method) -> Result<PropertyReport, PropertyError> {
    universal(l, Universality::Right, method)
}

pub fn is_universal_wipl(l: &FiniteLoop) -> PropertyReport {
    let wip = registry_identity("WIP");
    let base = PropertyReport::from_check("universal-wipl", holds(l, wip), None, ReportMethod::Bruteforce);
    if !base.holds {
        return base;
    }
    let isotopes = isotopy::all_principal_isotopes(l).map(|(spec, iso)| {
        PropertyReport::from_check("universal-wipl", holds(&iso, wip), Some(spec), ReportMethod::Bruteforce)
    });
    all_of("universal-wipl", isotopes, ReportMethod::Bruteforce)
}

pub fn is_cc(l: &FiniteLoop) -> PropertyReport {
    all_of("cc", [identity_report(l, "LCC"), identity_report(l, "RCC")], ReportMethod::Identity)
}

pub fn is_moufang(l: &FiniteLoop) -> PropertyReport {
    identity_report(l, "moufang")
}

pub fn is_extra(l: &FiniteLoop) -> PropertyReport {
    let parts = [identity_report(l, "moufang"), identity_report(l, "LCC"), identity_report(l, "RCC")];
    all_of("extra", parts, ReportMethod::Identity)
}

/// Closure of `gens` under multiplication, as a sorted element list.
pub fn closure(l: &FiniteLoop, gens: &[usize]) -> Vec<usize> {
    let mut members = vec![false; l.order()];
    let mut list: Vec<usize> = Vec::new();
    for &g in gens {
        if !members[g] {
            members[g] = true;
            list.push(g);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for j in 0..=i {
            let b = list[j];
            for p in [l.mul(a, b), l.mul(b, a)] {
                if !members[p] {
                    members[p] = true;
                    list.push(p);
                }
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

fn associative_on(l: &FiniteLoop, set: &[usize]) -> bool {
    set.iter().all(|&a| {
        set.iter().all(|&b| {
            let ab = l.mul(a, b);
            set.iter().all(|&c| l.mul(ab, c) == l.mul(a, l.mul(b, c)))
        })
    })
}

pub fn is_power_associative(l: &FiniteLoop) -> PropertyReport {
    let failure = (0..l.order()).find(|&x| !associative_on(l, &closure(l, &[x])));
    PropertyReport::structural("power-associative", failure.map(|x| vec![("x", x)]))
}

pub fn is_diassociative(l: &FiniteLoop) -> PropertyReport {
    let n = l.order();
    let failure = (0..n)
        .flat_map(|x| (x..n).map(move |y| (x, y)))
        .find(|&(x, y)| !associative_on(l, &closure(l, &[x, y])));
    PropertyReport::structural("diassociative", failure.map(|(x, y)| vec![("x", x), ("y", y)]))
}

pub fn is_vd_loop(l: &FiniteLoop) -> PropertyReport {
    let failure = isotopy::vd_failure(l, PseudoConvention::Standard);
    PropertyReport::structural("vd-loop", failure.map(|x| vec![("x", x)]))
}

/// Order of `J_λ` or `J_ρ` in the symmetric group.
pub fn inverse_map_order(l: &FiniteLoop, which: InverseMap) -> usize {
    match which {
        InverseMap::Lambda => l.lambda_map().cycle_order(),
        InverseMap::Rho => l.rho_map().cycle_order(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TripleFamily {
    Full,
    Left,
    Right,
}

/// Checks triple number `index` (0-based) of a family for every parameter
/// tuple. Witness: the parameters and the first failing `(a, b)`.
fn aut_triples(l: &FiniteLoop, family: TripleFamily, index: usize, property: &str) -> PropertyReport {
    let n = l.order();
    let failure = match family {
        TripleFamily::Full => (0..n * n * n).find_map(|k| {
            let (x, u, v) = (k / (n * n), (k / n) % n, k % n);
            let t = &isotopy::osborn_triples(l, x, u, v)[index];
            autotopism_failure(l, t).map(|(a, b)| vec![("x", x), ("u", u), ("v", v), ("a", a), ("b", b)])
        }),
        TripleFamily::Left => (0..n * n).find_map(|k| {
            let (x, v) = (k / n, k % n);
            let t = &isotopy::left_osborn_triples(l, x, v)[index];
            autotopism_failure(l, t).map(|(a, b)| vec![("x", x), ("v", v), ("a", a), ("b", b)])
        }),
        TripleFamily::Right => (0..n * n).find_map(|k| {
            let (x, u) = (k / n, k % n);
            let t = &isotopy::right_osborn_triples(l, x, u)[index];
            autotopism_failure(l, t).map(|(a, b)| vec![("x", x), ("u", u), ("a", a), ("b", b)])
        }),
    };
    PropertyReport::structural(property, failure)
}

/// Evaluates any property by name.
pub fn check(l: &FiniteLoop, name: &str, method: Method) -> Result<PropertyReport, PropertyError> {
    let name = canonical_name(name)?;
    let triple = |family, index| Ok(aut_triples(l, family, index, name));
    match name {
        "osborn" => Ok(is_osborn(l)),
        "universal-osborn" => universal(l, Universality::Full, method),
        "left-universal-osborn" => universal(l, Universality::Left, method),
        "right-universal-osborn" => universal(l, Universality::Right, method),
        "cc" => Ok(is_cc(l)),
        "extra" => Ok(is_extra(l)),
        "universal-wipl" => Ok(is_universal_wipl(l)),
        "power-associative" => Ok(is_power_associative(l)),
        "diassociative" => Ok(is_diassociative(l)),
        "vd-loop" => Ok(is_vd_loop(l)),
        "aut-triple-1" => triple(TripleFamily::Full, 0),
        "aut-triple-2" => triple(TripleFamily::Full, 1),
        "aut-triple-3" => triple(TripleFamily::Full, 2),
        "left-aut-triple-1" => triple(TripleFamily::Left, 0),
        "left-aut-triple-2" => triple(TripleFamily::Left, 1),
        "left-aut-triple-3" => triple(TripleFamily::Left, 2),
        "right-aut-triple-1" => triple(TripleFamily::Right, 0),
        "right-aut-triple-2" => triple(TripleFamily::Right, 1),
        "right-aut-triple-3" => triple(TripleFamily::Right, 2),
        _ => Ok(identity_report(l, name)),
    }
}

/// Registry identities of one family, for sweeps over whole families.
pub fn family(f: registry::Family) -> impl Iterator<Item = &'static NamedIdentity> {
    registry::registry().iter().filter(move |n| n.entry.family == f)
}
