//! Relations between Gaussian generators of the rank-one type B algebra
//! (N = 3) and the rank-two type D algebra (N = 4).
//!
//! Relations are written with slot A for the series in u and slot B for the
//! series in v. At c = 0 the same-sign and mixed-sign forms coincide for most
//! relations, so these are instantiated with all four sign pairs.

use crate::liedata::AlgType;
use crate::relation::{check_relation, GaussPair, Pairs, Relation};
use crate::report::{SuiteReport, REPRESENTATION_CAVEAT};

/// A named group of relations.
pub struct Group {
    pub name: &'static str,
    pub relations: Vec<Relation>,
}

const H1E12: &str = "(u-v)/(qu-q^-1v)";

/// Prefactor of [e12(u), f21(v)] in both types. The variant with (qu-q^-1v)
/// in the denominator fails for type B in the vector representation.
pub const EF_PREFACTOR: &str = "(q-q^-1)u/(u-v)";
pub const EF_PREFACTOR_AS_PRINTED: &str = "(q-q^-1)u/(qu-q^-1v)";

/// h1 relations shared by the gl2-like corner of both types.
fn h1_corner(e: &str, f: &str, h: &str) -> Vec<Relation> {
    vec![
        Relation::commute("h1(u) h1(v)", "h1A(u)", "h1B(v)", Pairs::All),
        Relation::commute(&format!("{h}(u) {h}(v)"), &format!("{h}A(u)"), &format!("{h}B(v)"), Pairs::All),
        Relation::commute(&format!("h1(u) {h}(v)"), "h1A(u)", &format!("{h}B(v)"), Pairs::Same),
        Relation::commute_with(&format!("h1(u) {h}(v)"), H1E12, "h1A(u)", &format!("{h}B(v)"), Pairs::Mixed),
        Relation::new(
            &format!("h1(u) {e}(v)"),
            &[("1", &format!("h1A(u) {e}B(v)"))],
            &[(H1E12, &format!("{e}B(v) h1A(u)")), ("(q-q^-1)v/(qu-q^-1v)", &format!("h1A(u) {e}A(u)"))],
            Pairs::All,
        ),
        Relation::new(
            &format!("{f}(v) h1(u)"),
            &[("1", &format!("{f}B(v) h1A(u)"))],
            &[(H1E12, &format!("h1A(u) {f}B(v)")), ("(q-q^-1)u/(qu-q^-1v)", &format!("{f}A(u) h1A(u)"))],
            Pairs::All,
        ),
    ]
}

/// The commutator [e(u), f(v)] = p(h(v)h1(v)^-1 − h(u)h1(u)^-1).
fn ef_commutator(e: &str, f: &str, h: &str, p: &str) -> Relation {
    Relation::new(
        &format!("[{e}(u), {f}(v)]"),
        &[("1", &format!("{e}A(u) {f}B(v)")), ("-1", &format!("{f}B(v) {e}A(u)"))],
        &[(p, &format!("{h}B(v) h1B(v)^-1")), (&format!("-{p}"), &format!("{h}A(u) h1A(u)^-1"))],
        Pairs::All,
    )
}

pub fn type_b_groups() -> Vec<Group> {
    let mut diag = h1_corner("e12", "f21", "h2");
    diag.push(ef_commutator("e12", "f21", "h2", EF_PREFACTOR));
    let d1 = "(q^-1u-v)(u-q^-2v)";
    let d2 = "(q^-1u-v)(q^-1u-qv)";
    let ee = vec![
        Relation::new(
            "e12(u) e12(v)",
            &[("1", "e12A(u) e12B(v)")],
            &[
                ("(u-q^-1v)/(q^-1u-v)", "e12B(v) e12A(u)"),
                ("-(q-q^-1)u/(q^-1u-qv)", "e12B(v)^2"),
                (&format!("-(u-q^-1v)(1-q^-2)v/({d1})"), "e12A(u)^2"),
                (&format!("(u-v)q^(-1/2)(q^-2-1)v/({d1})"), "e13A(u)"),
                (&format!("(u-v)q^(-1/2)(q^-1-q)u/({d2})"), "e13B(v)"),
            ],
            Pairs::All,
        ),
        Relation::new(
            "f21(v) f21(u)",
            &[("1", "f21B(v) f21A(u)")],
            &[
                ("(u-q^-1v)/(q^-1u-v)", "f21A(u) f21B(v)"),
                ("-(q-q^-1)v/(q^-1u-qv)", "f21B(v)^2"),
                (&format!("-(u-q^-1v)(1-q^-2)u/({d1})"), "f21A(u)^2"),
                (&format!("(u-v)q^(-1/2)(q^-2-1)u/({d1})"), "f31A(u)"),
                (&format!("(u-v)q^(-1/2)(q^-1-q)v/({d2})"), "f31B(v)"),
            ],
            Pairs::All,
        ),
    ];
    let p = "(q^-1u-qv)(u-q^-1v)/((u-v)(q^-1u-v))";
    let h2 = vec![
        Relation::new(
            "h2(v) f21(u)",
            &[("1", "h2B(v) f21A(u)"), ("(q-q^-1)v/(u-v)", "f21B(v) h2B(v)")],
            &[(p, "f21A(u) h2B(v)"), ("(q^-2-1)q^(1/2)v/(q^-1u-v)", "f32B(v) h2B(v)")],
            Pairs::All,
        ),
        Relation::new(
            "e12(u) h2(v)",
            &[("1", "e12A(u) h2B(v)"), ("(q-q^-1)u/(u-v)", "h2B(v) e12B(v)")],
            &[(p, "h2B(v) e12A(u)"), ("(q^-2-1)q^(1/2)u/(q^-1u-v)", "h2B(v) e23B(v)")],
            Pairs::All,
        ),
    ];
    let hh = vec![
        Relation::commute("h2(u) h2(v)", "h2A(u)", "h2B(v)", Pairs::Same),
        Relation::commute_with(
            "h2(u) h2(v)",
            "(q^-1u-qv)(u-q^-1v)/((qu-q^-1v)(q^-1u-v))",
            "h2A(u)",
            "h2B(v)",
            Pairs::Mixed,
        ),
    ];
    vec![
        Group { name: "diagonal, h1 and e12-f21 relations", relations: diag },
        Group { name: "e12-e12 and f21-f21 relations", relations: ee },
        Group { name: "h2 exchange with e12 and f21", relations: h2 },
        Group { name: "h2-h2 relations", relations: hh },
    ]
}

/// The gl2-like relations on indices {1, j}, for j = 2 or 3.
fn d_corner(j: usize) -> Vec<Relation> {
    let (e, f, h) = (format!("e1{j}"), format!("f{j}1"), format!("h{j}"));
    let mut out = h1_corner(&e, &f, &h);
    out.push(Relation::new(
        &format!("{e}(u) {h}(v)"),
        &[("1", &format!("{e}A(u) {h}B(v)"))],
        &[
            ("(qu-q^-1v)/(u-v)", &format!("{h}B(v) {e}A(u)")),
            ("-(q-q^-1)u/(u-v)", &format!("{h}B(v) {e}B(v)")),
        ],
        Pairs::All,
    ));
    out.push(Relation::new(
        &format!("{h}(v) {f}(u)"),
        &[("1", &format!("{h}B(v) {f}A(u)"))],
        &[
            ("(qu-q^-1v)/(u-v)", &format!("{f}A(u) {h}B(v)")),
            ("-(q-q^-1)v/(u-v)", &format!("{f}B(v) {h}B(v)")),
        ],
        Pairs::All,
    ));
    out.push(Relation::new(
        &format!("{e}(u) {e}(v)"),
        &[("1", &format!("{e}A(u) {e}B(v)"))],
        &[
            ("-(q-q^-1)u/(q^-1u-qv)", &format!("{e}B(v)^2")),
            ("-(q-q^-1)v/(q^-1u-qv)", &format!("{e}A(u)^2")),
            ("(qu-q^-1v)/(q^-1u-qv)", &format!("{e}B(v) {e}A(u)")),
        ],
        Pairs::All,
    ));
    out.push(Relation::new(
        &format!("{f}(u) {f}(v)"),
        &[("1", &format!("{f}A(u) {f}B(v)"))],
        &[
            ("(q-q^-1)u/(qu-q^-1v)", &format!("{f}A(u)^2")),
            ("(q-q^-1)v/(qu-q^-1v)", &format!("{f}B(v)^2")),
            ("(q^-1u-qv)/(qu-q^-1v)", &format!("{f}B(v) {f}A(u)")),
        ],
        Pairs::All,
    ));
    out.push(ef_commutator(&e, &f, &h, EF_PREFACTOR));
    out
}

/// Exchange of e1a and fa1 with h_b, for {a, b} = {2, 3}.
fn d_cross_h(a: usize, b: usize) -> Vec<Relation> {
    let (e, f, h) = (format!("e1{a}"), format!("f{a}1"), format!("h{b}"));
    vec![
        Relation::new(
            &format!("{e}(u) {h}(v)"),
            &[("1", &format!("{e}A(u) {h}B(v)"))],
            &[
                ("(q^-1u-qv)/(u-v)", &format!("{h}B(v) {e}A(u)")),
                ("(q-q^-1)u/(u-v)", &format!("{h}B(v) {e}B(v)")),
            ],
            Pairs::All,
        ),
        Relation::new(
            &format!("{h}(v) {f}(u)"),
            &[("1", &format!("{h}B(v) {f}A(u)"))],
            &[
                ("(q^-1u-qv)/(u-v)", &format!("{f}A(u) {h}B(v)")),
                ("(q-q^-1)v/(u-v)", &format!("{f}B(v) {h}B(v)")),
            ],
            Pairs::All,
        ),
    ]
}

fn negated(name: &str, x: &str, y: &str) -> Relation {
    Relation::new(name, &[("1", x)], &[("-1", y)], Pairs::Same)
}

pub fn type_d_groups() -> Vec<Group> {
    let zero = vec![
        Relation::new("e23(u) = 0", &[("1", "e23A(u)")], &[], Pairs::Same),
        Relation::new("f32(u) = 0", &[("1", "f32A(u)")], &[], Pairs::Same),
    ];
    let h23 = vec![
        Relation::commute("h2(u) h3(v)", "h2A(u)", "h3B(v)", Pairs::Same),
        Relation::commute_with(
            "h2(u) h3(v)",
            "(q^-1u-qv)(u-v)/((qu-q^-1v)(u-q^-1v))",
            "h2A(u)",
            "h3B(v)",
            Pairs::Mixed,
        ),
    ];
    let products = vec![
        negated("e14(u) = -e12(u) e13(u)", "e14A(u)", "e12A(u) e13A(u)"),
        negated("e14(u) = -e13(u) e12(u)", "e14A(u)", "e13A(u) e12A(u)"),
        negated("f41(u) = -f21(u) f31(u)", "f41A(u)", "f21A(u) f31A(u)"),
        negated("f41(u) = -f31(u) f21(u)", "f41A(u)", "f31A(u) f21A(u)"),
        Relation::equal("e12(u) e13(v) = e12(v) e13(u)", "e12A(u) e13B(v)", "e12B(v) e13A(u)", Pairs::All),
        Relation::equal("f21(u) f31(v) = f21(v) f31(u)", "f21A(u) f31B(v)", "f21B(v) f31A(u)", Pairs::All),
    ];
    let commuting = vec![
        Relation::commute("e12(u) e13(v)", "e12A(u)", "e13B(v)", Pairs::All),
        Relation::commute("f21(u) f31(v)", "f21A(u)", "f31B(v)", Pairs::All),
    ];
    let mirrors = vec![
        negated("e24(u) = -e13(u)", "e24A(u)", "e13A(u)"),
        negated("e34(u) = -e12(u)", "e34A(u)", "e12A(u)"),
        negated("f43(u) = -f21(u)", "f43A(u)", "f21A(u)"),
        negated("f42(u) = -f31(u)", "f42A(u)", "f31A(u)"),
    ];
    let mut cross = vec![
        Relation::commute("e12(u) f31(v)", "e12A(u)", "f31B(v)", Pairs::All),
        Relation::commute("e13(u) f21(v)", "e13A(u)", "f21B(v)", Pairs::All),
    ];
    cross.extend(d_cross_h(2, 3));
    vec![
        Group { name: "gl2 corner on indices 1,2", relations: d_corner(2) },
        Group { name: "vanishing of e23 and f32", relations: zero },
        Group { name: "gl2 corner on indices 1,3", relations: d_corner(3) },
        Group { name: "h2-h3 relations", relations: h23 },
        Group { name: "e14 and f41 as products", relations: products },
        Group { name: "e12-e13 and f21-f31 commute", relations: commuting },
        Group { name: "e24, e34, f42, f43 mirror relations", relations: mirrors },
        Group { name: "e12-f31, e13-f21 and h3 exchange", relations: cross },
        Group { name: "e13 and f31 exchange with h2", relations: d_cross_h(3, 2) },
    ]
}

/// Runs the low-rank relation list of the given type on a pair of Gaussian
/// generator families. N must be 3 for type B and 4 for type D.
pub fn check_lowrank(gp: &GaussPair, typ: AlgType, algebra: &str, k: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("lowrank", algebra).with_order(k);
    rep.convention(REPRESENTATION_CAVEAT);
    rep.convention(
        "prefactors are cleared by multiplying both sides by the product of their distinct denominators; \
         this is invertible when expanded in powers of (variable at 0)/(variable at infinity), and the \
         same-sign case is an identity of rational functions",
    );
    rep.convention("c = 0, so u+ = u- = u and v+ = v- = v");
    rep.convention(format!("[e12(u), f21(v)] uses the prefactor {EF_PREFACTOR} in both types"));
    if typ == AlgType::B {
        rep.convention("the h2-e12 exchange has its correction term in h2(v) e23(v)");
    }
    let (groups, want) = match typ {
        AlgType::B => (type_b_groups(), 3),
        AlgType::D => (type_d_groups(), 4),
    };
    if gp.size() != want {
        rep.fail("generator size", format!("expected N = {want}, got N = {}", gp.size()));
        return rep;
    }
    let k = k.min(gp.order());
    for g in groups {
        for rel in &g.relations {
            for (name, r) in check_relation(gp, rel, k) {
                rep.record(format!("{}: {name}", g.name), r);
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liedata::AlgebraData;
    use crate::lop::{build_lops, gaussian_generators};
    use crate::relation::{check_instance, Sign};

    fn gp(t: AlgType, n: usize, k: usize) -> GaussPair {
        let a = AlgebraData::new(t, n).unwrap();
        gaussian_generators(&build_lops(&a, k).unwrap()).unwrap()
    }

    #[test]
    fn b1_relations_hold() {
        let g = gp(AlgType::B, 1, 5);
        let rep = check_lowrank(&g, AlgType::B, "B1", 5);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn d2_relations_hold() {
        let g = gp(AlgType::D, 2, 5);
        let rep = check_lowrank(&g, AlgType::D, "D2", 5);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn printed_b_commutator_prefactor_fails() {
        let g = gp(AlgType::B, 1, 4);
        let r = ef_commutator("e12", "f21", "h2", EF_PREFACTOR_AS_PRINTED);
        assert!(check_relation(&g, &r, 4).iter().all(|(_, x)| x.is_err()));
    }

    #[test]
    fn altered_prefactor_is_caught() {
        let g = gp(AlgType::B, 1, 4);
        // Swapping q and q^-1 in the h1-e12 exchange must fail.
        let bad = Relation::new(
            "bad",
            &[("1", "h1A(u) e12B(v)")],
            &[("(u-v)/(q^-1u-qv)", "e12B(v) h1A(u)"), ("(q-q^-1)v/(q^-1u-qv)", "h1A(u) e12A(u)")],
            Pairs::Same,
        );
        assert!(check_instance(&g, &bad, (Sign::Plus, Sign::Plus), 4).unwrap().is_err());
    }
}
