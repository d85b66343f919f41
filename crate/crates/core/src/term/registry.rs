//! Named identity catalog.
//!
//! Names follow the labels used in the Osborn-loop literature (`OS0`,
//! `OSI_01.2^l`, the `{4}` shorthand, ...). Unnamed identities that appear
//! next to a named family get `<lemma>-aux-<k>` names; identities that only
//! occur inside a lemma statement are named after the lemma (`9.11b`).
//!
//! Variables are declared in the fixed order `x, y, z, u, v`, which is the
//! order counterexamples are reported in.

use std::sync::OnceLock;

use serde::Serialize;

use super::{parse_identity, Identity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Defining identities of loop classes.
    Definitional,
    /// `OS0`, `OS1`.
    Osborn,
    /// Characterizations of universality.
    Universal,
    LeftUniversal,
    RightUniversal,
    /// Identities satisfied by universal Osborn loops.
    Osi,
    OsiLeft,
    OsiRight,
    /// The `{4}` shorthand instances.
    Four,
    /// Identities that occur only as parts of lemma statements.
    Lemma,
}

#[derive(Debug)]
pub struct Entry {
    pub name: &'static str,
    pub source: &'static str,
    pub family: Family,
    /// Expected to hold in every group.
    pub group_valid: bool,
    /// Transcription involved a guess (unbalanced or inconsistent source).
    pub low_confidence: bool,
    pub note: &'static str,
}

const fn e(name: &'static str, source: &'static str, family: Family) -> Entry {
    Entry {
        name,
        source,
        family,
        group_valid: true,
        low_confidence: false,
        note: "",
    }
}

const fn shaky(name: &'static str, source: &'static str, family: Family, note: &'static str) -> Entry {
    Entry {
        name,
        source,
        family,
        group_valid: true,
        low_confidence: true,
        note,
    }
}

const fn nongroup(name: &'static str, source: &'static str, family: Family, note: &'static str) -> Entry {
    Entry {
        name,
        source,
        family,
        group_valid: false,
        low_confidence: false,
        note,
    }
}

use Family::*;

// B = u\(xv), A = u\([(uv)/B]v)
static ENTRIES: &[Entry] = &[
    // defining identities
    e("associative", "x*(y*z) = (x*y)*z", Definitional),
    nongroup("commutative", "x*y = y*x", Definitional, "fails in nonabelian groups"),
    e("3-PAPL", "(x*x)*x = x*(x*x)", Definitional),
    e("LSIPL", "x^l*(x*x) = x", Definitional),
    e("RSIPL", "(x*x)*x^r = x", Definitional),
    e("SFAIPL", "(x*x)^r = x^r*x^r", Definitional),
    e("SWIPL", "x*(x*x)^r = x^r", Definitional),
    e("L1BSIPL", "x^l*((x*x)*x) = x*x", Definitional),
    e("L2BSIPL", "x^l*(x*(x*x)) = x*x", Definitional),
    e("LAP", "(x*x)*y = x*(x*y)", Definitional),
    e("moufang", "(x*y)*(z*x) = (x*(y*z))*x", Definitional),
    e("LCC", "x*(y*z) = ((x*y)/x)*(x*z)", Definitional),
    e("RCC", "(z*y)*x = (z*x)*(x\\(y*x))", Definitional),
    e("WIP", "x*(y*x)^r = y^r", Definitional),
    nongroup("exponent-2", "x*x = e", Definitional, "fails in groups of exponent > 2"),
    e("J_rho=J_lambda", "x^r = x^l", Definitional),
    e("J_lambda^2=id", "x^l^l = x", Definitional),
    e("J_rho^2=id", "x^r^r = x", Definitional),
    e("J_rho^6=id", "x^r^r^r^r^r^r = x", Definitional),
    e("lambda-squared", "x^l^l = x^l*(x*x)", Definitional),
    e("rho-squared", "x^r^r = (x*x)*x^r", Definitional),
    e("E-lambda", "(y*x)*x^r = (y*x^l)*x", Definitional),
    e("E-rho", "(y*x)*x^r = (y*x^r)*x^r^r", Definitional),
    e("Eq1", "(y*x)*((y^l*(y*z))*y) = (y*(x*z))*y", Definitional),
    e(
        "moufang-form",
        "((y*(x^l*u))*u^l)*(x*u) = ((y*(x*u))*u^l)*(x^l*u)",
        Definitional,
    ),
    // Osborn identities and universality characterizations
    e("OS0", "x*((y*z)*x) = (x*((y*x^l)*x))*(z*x)", Osborn),
    e("OS1", "x*((y*z)*x) = (x*((y*x)*x^r))*(z*x)", Osborn),
    e(
        "OS0'",
        "x*(u\\(((y*z)/v)*(u\\(x*v)))) = \
         ((x*(u\\(((y*(u\\(((u*v)/(u\\(x*v)))*v)))/v)*(u\\(x*v)))))/v)*(u\\(((u*z)/v)*(u\\(x*v))))",
        Universal,
    ),
    e(
        "OS1'",
        "x*(u\\(((y*z)/v)*(u\\(x*v)))) = \
         ((x*(u\\(((y*(u\\(x*v)))/v)*(x\\(u*v)))))/v)*(u\\(((u*z)/v)*(u\\(x*v))))",
        Universal,
    ),
    e(
        "OS0^l",
        "x*(((y*(z*v))/v)*(x*v)) = ((x*(((y*((v/(x*v))*v))/v)*(x*v)))/v)*(z*(x*v))",
        LeftUniversal,
    ),
    e(
        "OS1^l",
        "x*(((y*(z*v))/v)*(x*v)) = ((x*(((y*(x*v))/v)*(x\\v)))/v)*(z*(x*v))",
        LeftUniversal,
    ),
    e(
        "OS0^r",
        "(u*x)*(u\\((y*z)*x)) = ((u*x)*(u\\((y*(u\\(u/x)))*x)))*(u\\((u*z)*x))",
        RightUniversal,
    ),
    e(
        "OS1^r",
        "(u*x)*(u\\((y*z)*x)) = ((u*x)*(u\\((y*x)*((u*x)\\u))))*(u\\((u*z)*x))",
        RightUniversal,
    ),
    // universal Osborn loops
    e(
        "OSI_01",
        "y*(u\\(((u*v)/(u\\(x*v)))*v)) = ((((y*(u\\(x*v)))/v)*(x\\(u*v)))/(u\\(x*v)))*v",
        Osi,
    ),
    e(
        "OSI_01.1",
        "((((u*z)/v)*(u\\((((y*v)*(u\\(((u*v)/z)*v)))/v)*z)))/v)*(u\\((u/v)*z)) = ((u*z)/v)*(u\\(y*z))",
        Osi,
    ),
    e(
        "OSI_01.2",
        "((u*z)/v)*(u\\((((y*v)*z)/v)*(((u*z)/v)\\(u*v)))) = ((((u*z)/v)*(u\\(y*z)))/(u\\((u/v)*z)))*v",
        Osi,
    ),
    e(
        "OSI_01.1.1",
        "((u\\((((u*y)*u)*(u\\((u*u)*u)))/u))/u)*u^r = y",
        Osi,
    ),
    e(
        "OSI_01.2.1",
        "v^l*(u\\((((y*v)*u^r)/v)*(v^l\\(u*v)))) = ((v^l*(u\\(y*u^r)))/(u\\((u/v)*u^r)))*v",
        Osi,
    ),
    e("OSI_01.2.2", "v^l*(y*(v^l\\v)) = ((v^l*y)/v^l)*v", Osi),
    e("9a-aux-1", "(u*u)*(u\\((u*u)*u)) = (u*(u*u))*u", Osi),
    e("9a-aux-2", "v^l*(v*(v^l\\v)) = v^l^l*v", Osi),
    e("9a-aux-3", "v^l^l*v = (v^l*(v*v))*v", Osi),
    e("9a-aux-4", "v*(v^r*(v\\v^r)) = v^l*v^r", Osi),
    // left universal Osborn loops
    e(
        "OSI_01^l",
        "y*((v/(x*v))*v) = ((((y*(x*v))/v)*(x\\v))/(x*v))*v",
        OsiLeft,
    ),
    e(
        "OSI_01.2^l",
        "z*((((y*v)*(z*v))/v)*(z\\v)) = ((z*(y*(z*v)))/(v^l*(z*v)))*v",
        OsiLeft,
    ),
    shaky(
        "OSI_01.1^l",
        "((z*((((y*v)*((v/(z*v))*v))/v)*(z*v)))/v)*(v^l*(z*v)) = z*(y*(z*v))",
        OsiLeft,
        "right side read as z(y(zv)); the printed z(y(vz)) already fails in groups",
    ),
    nongroup(
        "OSI_01.1^l[printed]",
        "((z*((((y*v)*((v/(z*v))*v))/v)*(z*v)))/v)*(v^l*(z*v)) = z*(y*(v*z))",
        OsiLeft,
        "literal printed right side z(y(vz)); kept to document the typo",
    ),
    e("OSI_01.1.1^l", "((v^l*(((y*v)*(v*v))/v))/v)*v^l = v^l*y", OsiLeft),
    shaky(
        "OSI_01.1.2^l",
        "((z*(((v*((v/(z*v))*v))/v)*(z*v)))/v)*(v^l*(z*v)) = z*(z*v)",
        OsiLeft,
        "re-derived by putting y=e in OSI_01.1^l; the printed form does not follow from it",
    ),
    e(
        "OSI_01.2.1^l",
        "v*(((y*v)*(v*v))/v) = ((v*(y*(v*v)))/(v^l*(v*v)))*v",
        OsiLeft,
    ),
    e(
        "OSI_01.2.2^l",
        "v*((v*(v*v))/v) = ((v*(v*v))/(v^l*(v*v)))*v",
        OsiLeft,
    ),
    e(
        "OSI_01.2.3^l",
        "v*(((v*v)*(v*v))/v) = ((v*(v*(v*v)))/(v^l*(v*v)))*v",
        OsiLeft,
    ),
    e("OSI_01.2.4^l", "v^l*(y*(v^l\\v)) = ((v^l*y)/v^l)*v", OsiLeft),
    e("9.1a-aux-1", "v*(v*v) = (v^l\\v)*v", OsiLeft),
    e("9.1a-aux-2", "(v*v)*(v*v) = (v^l\\(v^l^l*v))*v", OsiLeft),
    // right universal Osborn loops
    e("OSI_01^r", "y*(u\\(u/x)) = ((y*x)*((u*x)\\u))/x", OsiRight),
    e(
        "OSI_01.2^r",
        "((u*z)*(u\\((y*z)*((u*z)\\u))))*z = (u*z)*(u\\(y*z))",
        OsiRight,
    ),
    e(
        "OSI_01.1^r",
        "((u*z)*(u\\((y*(u\\(u/z)))*z)))*z = (u*z)*(u\\(y*z))",
        OsiRight,
    ),
    shaky(
        "OSI_01.1.1^r",
        "((u*z)*(u\\((z^l*(u\\(u/z)))*z)))*z = (u*z)*u^r",
        OsiRight,
        "printed right side has an unmatched parenthesis; minimal balancing",
    ),
    shaky(
        "OSI_01.1.2^r",
        "((u*u)*(u\\((u^l*u^r)*u)))*u = (u*u)*u^r",
        OsiRight,
        "printed right side has an unmatched parenthesis; minimal balancing",
    ),
    e(
        "OSI_01.1.3^r",
        "((u*z)*(u\\((z*(u\\(u/z)))*z)))*z = (u*z)*(u\\(z*z))",
        OsiRight,
    ),
    shaky(
        "OSI_01.1.4^r",
        "(u\\((u^r*(u\\(u/u^r)))*u^r))*u^r = u\\(u^r*u^r)",
        OsiRight,
        "printed left side has a free z; encoded by putting z=u^r in OSI_01.1.3^r",
    ),
    e(
        "OSI_01.1.5^r",
        "((u*z)*(u\\((z^r*(u\\(u/z)))*z)))*z = (u*z)*(u\\(z^r*z))",
        OsiRight,
    ),
    e(
        "OSI_01.1.6^r",
        "(z^l\\((z^r*(z^l\\(z^l/z)))*z))*z = z^l\\(z^r*z)",
        OsiRight,
    ),
    e(
        "OSI_01.1.7^r",
        "((z*z)*(z\\((z^r*z^r)*z)))*z = (z*z)*(z\\(z^r*z))",
        OsiRight,
    ),
    e(
        "OSI_01.2.1^r",
        "((u*z)*(u\\((u*z)\\u)))*z = (u*z)*u^r",
        OsiRight,
    ),
    e(
        "OSI_01.2.2^r",
        "((u*u)*(u\\((u*u)\\u)))*u = (u*u)*u^r",
        OsiRight,
    ),
    e(
        "OSI_01.2.3^r",
        "((u*u^l)*(u\\((u*u^l)\\u)))*u^l = (u*u^l)*u^r",
        OsiRight,
    ),
    e(
        "OSI_01.2.4^r",
        "((u*z)*(u\\(z*((u*z)\\u))))*z = (u*z)*(u\\z)",
        OsiRight,
    ),
    shaky(
        "OSI_01.2.5^r",
        "((u*u^l)*(u\\(u^l*((u*u^l)\\u))))*u^l = (u*u^l)*(u\\u^l)",
        OsiRight,
        "printed u\\uu^l read as u\\u^l, matching the substitution z=u^l in OSI_01.2.4^r",
    ),
    e(
        "OSI_01.2.6^r",
        "((u*z)*(u\\((z*z)*((u*z)\\u))))*z = (u*z)*(u\\(z*z))",
        OsiRight,
    ),
    e(
        "OSI_01.2.7^r",
        "((u*z)*(u\\((z^r*z)*((u*z)\\u))))*z = (u*z)*(u\\(z^r*z))",
        OsiRight,
    ),
    e(
        "OSI_01.2.8^r",
        "((u*u)*(u\\((u^r*u)*((u*u)\\u))))*u = (u*u)*(u\\(u^r*u))",
        OsiRight,
    ),
    e(
        "OSI_01.2.9^r",
        "((u*u)*u^r)*u^r = u*((u\\((((u*u)*u^r)*u^r)*u))*u^r)",
        OsiRight,
    ),
    e(
        "OSI_01.2.10^r",
        "((u*u^l)*(u\\((u*u^l)*((u*u^l)\\u))))*u^l = (u*u^l)*(u\\(u*u^l))",
        OsiRight,
    ),
    e("9.11a-aux-1", "u*((u\\(u^r*u))*u^r) = u^r", OsiRight),
    // {4} shorthand
    e("4_{11.11=(1.11)1}^{1}", "(x*x)*(x*x) = (x*(x*x))*x", Four),
    e("4_{11.11=(11.1)1}^{1}", "(x*x)*(x*x) = ((x*x)*x)*x", Four),
    e("4_{12.22=(1.22)2}^{1,3}", "(x*y)*(y*y) = (x*(y*y))*y", Four),
    e("4_{12.22=(12.2)2}^{1,3}", "(x*y)*(y*y) = ((x*y)*y)*y", Four),
    e("4_{12.12=(12.1)2}^{2,2}", "(x*y)*(x*y) = ((x*y)*x)*y", Four),
    e("4_{12.12=(1.21)2}^{2,2}", "(x*y)*(x*y) = (x*(y*x))*y", Four),
    // identities inside lemma statements
    e("9c-iv", "v*(v^l*(v*(v^l\\v))) = (v^l\\v)*v", Lemma),
    e("9.1c", "v^l*((v*v)*v) = v^l^l*v", Lemma),
    e("9.1g", "(y*((y*y)*y^r))*y = y*(y*y)", Lemma),
    e("9.11b", "(u^l*u^r)*u = u*(u*u)^r", Lemma),
    e("9.11c", "u^r*u^r = u*((u\\((u^r*u)*u^r))*u^r)", Lemma),
    shaky(
        "9.11d",
        "(z^l\\((z^r*z^l)*z))*z = z^l\\(z^r*z)",
        Lemma,
        "statement garbled relative to OSI_01.1.6^r; read literally",
    ),
    e("9.11e-a", "(z*z)*z^l = z", Lemma),
    e("9.11e-b", "((z*z)*(z\\z^r))*z = (z*z)*(z\\(z^r*z))", Lemma),
    e("9.11f", "u*(u*((u\\u^r)*u^r)) = u^r", Lemma),
    e("9.11g", "u\\u^r = (u*u)^r", Lemma),
    e("9.11i-a", "(u*u^l)*u^r = u^l", Lemma),
    e("9.11i-b", "u = (u*u^l)*(u*(u*u^l)^r)", Lemma),
    e("9.11j-a", "u^r*u = u*u^l", Lemma),
    e("9.11j-b", "u*(u^l*u^r) = u^r", Lemma),
    e(
        "9.11k",
        "((u*u)*(u\\((u^r*u)*((u*u)\\u))))*u = (u*u)*u^l",
        Lemma,
    ),
];

const VAR_ORDER: [&str; 5] = ["x", "y", "z", "u", "v"];

pub struct NamedIdentity {
    pub entry: &'static Entry,
    pub identity: Identity,
}

fn build() -> Vec<NamedIdentity> {
    ENTRIES
        .iter()
        .map(|entry| {
            let (lhs, rhs) = parse_identity(entry.source)
                .unwrap_or_else(|err| panic!("registry entry {}: {err}", entry.name));
            let mut present = lhs.vars();
            present.extend(rhs.vars());
            let vars: Vec<String> = VAR_ORDER
                .iter()
                .filter(|v| present.iter().any(|p| p == *v))
                .map(|v| v.to_string())
                .collect();
            let identity = Identity::with_vars(entry.name, lhs, rhs, vars)
                .unwrap_or_else(|err| panic!("registry entry {}: {err}", entry.name));
            NamedIdentity { entry, identity }
        })
        .collect()
}

/// Every named identity, in catalog order.
pub fn registry() -> &'static [NamedIdentity] {
    static CELL: OnceLock<Vec<NamedIdentity>> = OnceLock::new();
    CELL.get_or_init(build)
}

pub fn lookup(name: &str) -> Option<&'static NamedIdentity> {
    registry().iter().find(|n| n.entry.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::term::{holds, parse};
    use std::collections::HashSet;

    #[test]
    fn names_are_unique() {
        let mut seen = HashSet::new();
        for n in registry() {
            assert!(seen.insert(n.entry.name), "duplicate {}", n.entry.name);
        }
    }

    #[test]
    fn lookup_examples() {
        let os1 = lookup("OS1").unwrap();
        assert_eq!(*os1.identity.lhs(), parse("x*((y*z)*x)").unwrap());
        assert_eq!(*os1.identity.rhs(), parse("(x*((y*x)*x^r))*(z*x)").unwrap());
        let four = lookup("4_{11.11=(1.11)1}^{1}").unwrap();
        assert_eq!(four.identity.to_string(), "x * x * (x * x) = x * (x * x) * x");
        let osi = lookup("OSI_01").unwrap();
        assert_eq!(osi.identity.vars(), ["x", "y", "u", "v"]);
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn group_valid_entries_hold_in_small_groups() {
        for g in [corpus::symmetric3(), corpus::dihedral(4), corpus::quaternion8(), corpus::cyclic(6)] {
            for n in registry().iter().filter(|n| n.entry.group_valid) {
                let r = holds(&g, &n.identity);
                assert!(r.holds, "{} fails in a group: {:?}", n.entry.name, r.counterexample);
            }
        }
    }

    #[test]
    fn non_group_entries_fail_somewhere() {
        let s3 = corpus::symmetric3();
        for n in registry().iter().filter(|n| !n.entry.group_valid) {
            assert!(!holds(&s3, &n.identity).holds, "{}", n.entry.name);
        }
    }
}
