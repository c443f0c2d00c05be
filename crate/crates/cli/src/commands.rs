use anyhow::{anyhow, bail, Result};
use coalg_core::algebra::{satisfies, Satisfaction};
use coalg_core::backend::{Gen, HomEquality, Obj};
use coalg_core::coalgebra::{g_phi, n_phi, v_phi, verify_coalgebra, Coalgebra, Verification};
use coalg_core::dsl::Workspace;
use coalg_core::ew::{
    check_tensor_hom_adjunction, invariant_factors, left_adjoint_via_presentation, module_isomorphism, tensor,
};
use coalg_core::hopf::{gphi_matches_classical, is_submodule, is_submonoid, FiniteBialgebra};
use coalg_core::report::{Detail, Report, Verdict};
use coalg_core::suite::run_suite;
use coalg_core::theory::{validate_theory_morphism, MorphismValidation, TheoryMorphism};

use crate::Command;

pub fn run(ws: &Workspace, cmd: &Command, bound: usize, report: &mut Report) -> Result<()> {
    match cmd {
        Command::Check { name } => check(ws, name, report),
        Command::Gphi { phi, coalgebra } => gphi(ws, phi, coalgebra, bound, report),
        Command::Vphi { phi, generators } => vphi(ws, phi, generators, report),
        Command::Nphi { phi, algebra } => nphi(ws, phi, algebra, bound, report),
        Command::Ew { bimodule, modules } => ew(ws, bimodule, modules, report),
        Command::Hopf { bialgebra } => hopf(ws, bialgebra, report),
        Command::Suite { name } => {
            report.extend(run_suite(name)?);
            Ok(())
        }
    }
}

fn morphism<'a>(ws: &'a Workspace, name: &str) -> Result<&'a TheoryMorphism> {
    ws.morphisms.get(name).ok_or_else(|| anyhow!("unknown morphism `{name}`"))
}

fn coalgebra<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Coalgebra> {
    ws.coalgebras.get(name).ok_or_else(|| anyhow!("unknown coalgebra `{name}`"))
}

fn bialgebra<'a>(ws: &'a Workspace, name: &str) -> Result<&'a FiniteBialgebra> {
    ws.bialgebras.get(name).ok_or_else(|| anyhow!("unknown bialgebra `{name}`"))
}

fn verification(report: &mut Report, v: &Verification) {
    for c in &v.checks {
        report.push(match &c.result {
            HomEquality::Equal => Detail::ok(c.equation.clone(), "holds"),
            HomEquality::Differs { at, left, right } => {
                Detail::fail(c.equation.clone(), format!("differs at {at}: {left} vs {right}"))
            }
        });
    }
}

/// Co-operation images of each generator, for free carriers.
fn coop_witnesses(report: &mut Report, c: &Coalgebra) {
    let Some(gens) = c.carrier.gens() else { return };
    for (op, h) in c.cotheory.signature.ops().iter().zip(&c.coops) {
        let target = c.backend.copower(&c.carrier, op.arity).map(|cp| cp.obj);
        for (g, img) in gens.iter().zip(&h.images) {
            let shown = match &target {
                Ok(t) => c.backend.show(t, img),
                Err(_) => format!("{img:?}"),
            };
            report.witness(format!("{}({g}) = {shown}", op.name));
        }
    }
}

fn check(ws: &Workspace, name: &str, report: &mut Report) -> Result<()> {
    if let Some(t) = ws.theories.get(name) {
        report.push(Detail::ok(
            "presentation",
            format!("{} ops, {} equations, all well-formed", t.signature.len(), t.equations.len()),
        ));
        report.witness(t.to_string());
    } else if let Some(phi) = ws.morphisms.get(name) {
        match validate_theory_morphism(phi)? {
            MorphismValidation::Valid => report.push(Detail::ok(
                "equations preserved",
                format!(
                    "all {} equations of {} hold in {}",
                    phi.source.equations.len(),
                    phi.source.name,
                    phi.target.name
                ),
            )),
            MorphismValidation::Counterexample { equation, lhs, rhs, lhs_nf, rhs_nf } => {
                report.push(Detail::fail(
                    format!("equation {equation}"),
                    format!("translates to {lhs} = {rhs}, normal forms {lhs_nf} and {rhs_nf} differ"),
                ));
                report.witness(format!("{lhs_nf} != {rhs_nf}"));
            }
        }
    } else if let Some(a) = ws.algebras.get(name) {
        for eq in &a.theory.equations {
            report.push(match satisfies(&a.algebra, eq)? {
                Satisfaction::Holds => Detail::ok(eq.to_string(), "holds"),
                Satisfaction::Fails(env) => Detail::fail(eq.to_string(), format!("fails at {env:?}")),
            });
        }
    } else if let Some(r) = ws.rings.get(name) {
        report.push(Detail::ok("ring axioms", format!("{} elements, commutative: {}", r.size(), r.is_commutative())));
    } else if let Some(m) = ws.modules.get(name) {
        report.push(Detail::ok(
            "module axioms",
            format!("{} over {}: {}", m.size(), m.ring().name, invariant_factors(m)),
        ));
    } else if let Some(b) = ws.bimodules.get(name) {
        report.push(Detail::ok(
            "bimodule axioms",
            format!("{} elements over ({}, {})", b.size(), b.left_ring().name, b.right_ring().name),
        ));
    } else if let Some(a) = ws.calgebras.get(name) {
        report.push(Detail::ok("algebra axioms", format!("{} elements over {}", a.size(), a.ring().name)));
    } else if let Some(h) = ws.bialgebras.get(name) {
        let laws = if h.antipode.is_some() { "coassociativity, counit, antipode" } else { "coassociativity, counit" };
        report.push(Detail::ok("bialgebra laws", format!("{laws} hold on {} elements", h.algebra.size())));
    } else if let Some(c) = ws.coalgebras.get(name) {
        verification(report, &verify_coalgebra(c)?);
        coop_witnesses(report, c);
    } else {
        bail!("unknown name `{name}`");
    }
    Ok(())
}

fn gphi(ws: &Workspace, phi: &str, name: &str, bound: usize, report: &mut Report) -> Result<()> {
    if matches!(phi, "grouplike" | "primitive") {
        let h = bialgebra(ws, name)?;
        let c = gphi_matches_classical(h)?;
        let (abs, cls) = if phi == "grouplike" {
            (c.group_like_abstract, c.group_like_classical)
        } else {
            (c.primitive_abstract, c.primitive_classical)
        };
        report.push(Detail::holds(
            "matches the classical filter",
            abs == cls,
            format!("{} vs {}", h.algebra.show_set(&abs), h.algebra.show_set(&cls)),
        ));
        report.witness(h.algebra.show_set(&abs));
        return Ok(());
    }
    let phi = morphism(ws, phi)?;
    let c = coalgebra(ws, name)?;
    let g = g_phi(phi, c, bound)?;
    let shown: Vec<String> = g.elems.iter().map(|e| c.show(e)).collect();
    let verdict = if g.exact { Verdict::Ok } else { Verdict::Bounded };
    let cut = if g.exact { String::new() } else { format!(" (enumeration cut at bound {bound})") };
    report.push(Detail::new("invariants", verdict, format!("{} elements{cut}", shown.len())));
    if let Some((sub, _)) = &g.subalgebra {
        report.push(Detail::ok("subalgebra", format!("closed under all ops, {} elements", sub.size())));
    }
    report.witness(format!("{{{}}}", shown.join(", ")));
    Ok(())
}

fn vphi(ws: &Workspace, phi: &str, generators: &[String], report: &mut Report) -> Result<()> {
    let phi = morphism(ws, phi)?;
    let gens: Vec<Gen> = generators.iter().map(Gen::named).collect();
    let c = v_phi(phi, gens)?;
    verification(report, &verify_coalgebra(&c)?);
    coop_witnesses(report, &c);
    Ok(())
}

fn nphi(ws: &Workspace, phi: &str, algebra: &str, bound: usize, report: &mut Report) -> Result<()> {
    let phi = morphism(ws, phi)?;
    let a = ws.algebras.get(algebra).ok_or_else(|| anyhow!("unknown algebra `{algebra}`"))?;
    let c = n_phi(phi, &Obj::Finite(a.algebra.clone()))?;
    verification(report, &verify_coalgebra(&c)?);
    let g = g_phi(phi, &c, bound)?;
    report.push(Detail::holds(
        "G(N(A)) = A",
        g.elems.len() == a.algebra.size(),
        format!("{} of {} elements invariant", g.elems.len(), a.algebra.size()),
    ));
    Ok(())
}

fn ew(ws: &Workspace, bimodule: &str, modules: &[String], report: &mut Report) -> Result<()> {
    let m = ws.bimodules.get(bimodule).ok_or_else(|| anyhow!("unknown bimodule `{bimodule}`"))?;
    let xs = modules
        .iter()
        .map(|n| ws.modules.get(n).ok_or_else(|| anyhow!("unknown module `{n}`")))
        .collect::<Result<Vec<_>>>()?;
    for x in &xs {
        let t = tensor(m, x)?;
        let l = left_adjoint_via_presentation(m, x)?;
        let iso = module_isomorphism(&l, &t.module)?;
        report.push(Detail::holds(
            format!("L({}) vs {} (x) {}", x.name(), m.name, x.name()),
            iso.iso.is_some(),
            format!("{} and {}", iso.left_factors, iso.right_factors),
        ));
    }
    for x in &xs {
        for y in &xs {
            let c = check_tensor_hom_adjunction(m, x, y)?;
            report.push(match &c.problem {
                None => Detail::ok(
                    format!("adjunction at ({}, {})", x.name(), y.name()),
                    format!("{} = {} homs, {} naturality squares", c.left, c.right, c.naturality_squares),
                ),
                Some(p) => Detail::fail(format!("adjunction at ({}, {})", x.name(), y.name()), p.clone()),
            });
        }
    }
    Ok(())
}

fn hopf(ws: &Workspace, name: &str, report: &mut Report) -> Result<()> {
    let h = bialgebra(ws, name)?;
    let c = gphi_matches_classical(h)?;
    let a = &h.algebra;
    report.push(match c.coalgebra_laws {
        Some(ok) => Detail::holds("coalgebra laws in the backend", ok, "checked by normal forms"),
        None => {
            Detail::ok("coalgebra laws in the backend", "copower over the size cap; classical laws checked on load")
        }
    });
    report.push(Detail::holds(
        "group-likes",
        c.group_like_abstract == c.group_like_classical,
        format!("{} vs {}", a.show_set(&c.group_like_abstract), a.show_set(&c.group_like_classical)),
    ));
    report.push(Detail::holds(
        "primitives",
        c.primitive_abstract == c.primitive_classical,
        format!("{} vs {}", a.show_set(&c.primitive_abstract), a.show_set(&c.primitive_classical)),
    ));
    report.push(Detail::holds(
        "group-likes form a submonoid",
        is_submonoid(a, &c.group_like_abstract),
        "closed under times, contains one",
    ));
    report.push(Detail::holds(
        "primitives form a submodule",
        is_submodule(a, &c.primitive_abstract),
        "closed under plus and scalars, contains zero",
    ));
    report.witness(format!("group-likes {}", a.show_set(&c.group_like_abstract)));
    report.witness(format!("primitives {}", a.show_set(&c.primitive_abstract)));
    Ok(())
}
