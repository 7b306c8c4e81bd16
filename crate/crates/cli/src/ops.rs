//! Subcommand handlers: each reads named fields from the input object and
//! returns a JSON value.

use crate::input::Input;
use crate::{AlgebraOp, ClassifyOp, Cmd, LatmacOp, LatticeCmd, LatticeOpKind, LocalizeOp, SemigroupOp};
use latsemi::algebra::Algebra;
use latsemi::classify::{self, ClassTable};
use latsemi::algebra::PolyField;
use latsemi::exactla::IntMatrix;
use latsemi::io::{self, int_str, ints, lattice_to_json, matrix_to_json, rat_str, rats, AnyAlgebra};
use latsemi::lattice::{FullLattice, Order};
use latsemi::semigroup::{self, EquivalenceVerdict};
use latsemi::{latmac, localize, Error, Result};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Display;

pub fn run(cmd: &Cmd, inp: &Input) -> Result<Value> {
    match cmd {
        Cmd::Algebra { op } => algebra(*op, inp),
        Cmd::Lattice { op } => lattice(*op, inp),
        Cmd::Semigroup { op } => semigroup_op(*op, inp),
        Cmd::Localize { op } => localize_op(*op, inp),
        Cmd::Classify { op } => classify_op(*op, inp),
        Cmd::Latmac { op } => latmac_op(*op, inp),
    }
}

fn elems<T: Display>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn describe<F: PolyField>(a: &Algebra<F>, op: AlgebraOp) -> Value
where
    F::Elem: Display,
{
    match op {
        AlgebraOp::Inspect => {
            let d = a.decompose();
            json!({
                "dim": a.dim(),
                "blocks": d.k(),
                "radical_dim": d.radical.len(),
                "separable": d.radical.is_empty(),
                "n_max": d.n_max,
            })
        }
        AlgebraOp::Decompose => {
            let d = a.decompose();
            let blocks: Vec<Value> = d
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "unit": elems(&b.unit),
                        "dim": b.basis.len(),
                        "field_dim": b.field_basis.len(),
                        "nil_dim": b.nil_basis.len(),
                        "generator": elems(&b.generator),
                        "min_poly": elems(b.min_poly.coeffs()),
                        "nilpotency": b.nilpotency,
                    })
                })
                .collect();
            json!({"blocks": blocks, "radical_dim": d.radical.len(), "n_max": d.n_max})
        }
        AlgebraOp::Filtrations => {
            let f = a.filtrations();
            json!({
                "radical_dims": f.radical_dims(),
                "socle_dims": f.socle_dims(),
                "n_max": f.n_max,
                "blocks": a.decompose().k(),
            })
        }
    }
}

fn algebra(op: AlgebraOp, inp: &Input) -> Result<Value> {
    let mut v = match inp.any_algebra()? {
        AnyAlgebra::Q(a) => describe(a.algebra(), op),
        AnyAlgebra::Fp(a) => describe(&a, op),
    };
    let field = match inp.any_algebra()? {
        AnyAlgebra::Q(_) => json!("Q"),
        AnyAlgebra::Fp(a) => json!({"Fp": a.field().p().to_string()}),
    };
    v.as_object_mut().unwrap().insert("field".into(), field);
    Ok(v)
}

fn random_lattice(inp: &Input, max_entry: i64) -> Result<Value> {
    let alg = inp.algebra()?;
    let n = alg.dim();
    let m = max_entry.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(inp.seed);
    loop {
        let rows: Vec<Vec<BigInt>> = (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-m..=m))).collect()).collect();
        let b = IntMatrix::from_rows(&rows);
        if b.det() != BigInt::from(0) {
            let den = BigInt::from(rng.gen_range(1..=2i64));
            let l = FullLattice::from_int(&alg, &den, &b)?;
            return Ok(json!({"lattice": lattice_to_json(&l)}));
        }
    }
}

fn lattice(op: LatticeCmd, inp: &Input) -> Result<Value> {
    let kind = match op {
        LatticeCmd::Random { max_entry } => return random_lattice(inp, max_entry),
        LatticeCmd::Op { kind } => kind,
    };
    let alg = inp.algebra()?;
    let l1 = inp.lattice(&alg, "l1")?;
    Ok(match kind {
        LatticeOpKind::Product => json!({"lattice": lattice_to_json(&l1.product(&inp.lattice(&alg, "l2")?))}),
        LatticeOpKind::Colon => json!({"lattice": lattice_to_json(&l1.colon(&inp.lattice(&alg, "l2")?))}),
        LatticeOpKind::Order => json!({"lattice": lattice_to_json(&l1.order_of())}),
        LatticeOpKind::Dual => {
            let d = l1.dual();
            json!({"dual": {"den": int_str(d.den()), "basis": d.basis().columns().iter().map(|c| ints(c)).collect::<Vec<_>>()}})
        }
        LatticeOpKind::Index => json!({"index": rat_str(&l1.gen_index(&inp.lattice(&alg, "l2")?))}),
    })
}

fn verdict_json<W>(v: &EquivalenceVerdict<W>, witness: impl Fn(&W) -> Value) -> Value {
    match v {
        EquivalenceVerdict::Yes(w) => json!({"verdict": "yes", "witness": witness(w)}),
        EquivalenceVerdict::No => json!({"verdict": "no"}),
        EquivalenceVerdict::UnknownWithinBound(b) => json!({"verdict": "unknown", "bound": b}),
    }
}

fn semigroup_op(op: SemigroupOp, inp: &Input) -> Result<Value> {
    let alg = inp.algebra()?;
    let l = inp.lattice(&alg, if inp.has("lattice") { "lattice" } else { "l1" })?;
    Ok(match op {
        SemigroupOp::Invertible => {
            let r = semigroup::is_invertible(&l);
            json!({
                "invertible": r.verdict,
                "order": lattice_to_json(&r.order),
                "inverse": r.inverse.as_ref().map(lattice_to_json),
                "criteria": {"ii": r.crit_ii, "iii": r.crit_iii, "v": r.crit_v},
            })
        }
        SemigroupOp::Weq => verdict_json(&semigroup::w_equivalent(&l, &inp.lattice(&alg, "l2")?), lattice_to_json),
        SemigroupOp::Epseq => verdict_json(&semigroup::eps_equivalent_bounded(&l, &inp.lattice(&alg, "l2")?, inp.budget.eps_box), |a| rats(a)),
        SemigroupOp::PowerIndex => json!({"power_index": semigroup::power_invertibility_index(&l)}),
        SemigroupOp::Invertibilize => {
            let lambda = semigroup::construct_invertibilizing_order(&l)?;
            let l2 = semigroup::normalize_in_order(&l, &lambda)?;
            let (n, stationary) = semigroup::stationary_power(&l2)?;
            json!({
                "order": lattice_to_json(&lambda),
                "normalized": lattice_to_json(&l2),
                "power": n,
                "stationary_order": lattice_to_json(&stationary),
            })
        }
    })
}

fn primes(ps: &[BigInt]) -> Value {
    ints(ps)
}

fn localize_op(op: LocalizeOp, inp: &Input) -> Result<Value> {
    let alg = inp.algebra()?;
    Ok(match op {
        LocalizeOp::BadPrimes => json!({"primes": primes(&localize::bad_primes(&inp.lattice(&alg, "l1")?, &inp.lattice(&alg, "l2")?)?)}),
        LocalizeOp::Glue => {
            let reference = inp.lattice(&alg, "reference")?;
            let items = inp.get("assignments")?.as_array().ok_or_else(|| Error::Parse("assignments must be a list".into()))?;
            let assignments: Vec<(BigInt, FullLattice)> = items
                .iter()
                .map(|it| {
                    let p = crate::input::num(it.get("p").ok_or_else(|| Error::Parse("assignment without p".into()))?)?.integer()?;
                    let l = io::lattice_from_value(it.get("lattice").ok_or_else(|| Error::Parse("assignment without lattice".into()))?, &alg)?;
                    Ok((p, l))
                })
                .collect::<Result<_>>()?;
            json!({"lattice": lattice_to_json(&localize::glue(&reference, &assignments)?)})
        }
        LocalizeOp::LocalPrincipal => {
            let (ok, gens) = localize::is_locally_principal(&inp.lattice(&alg, "lattice")?)?;
            let gens: Vec<Value> = gens.iter().map(|(p, a)| json!({"p": int_str(p), "generator": rats(a)})).collect();
            json!({"locally_principal": ok, "generators": gens})
        }
        LocalizeOp::LiftUnit => {
            let lambda = inp.order(&alg, "order")?;
            let l = inp.lattice(&alg, "lattice")?;
            let a = localize::lift_unit(&lambda, &l, &inp.integer("p")?, &inp.element(&alg, "a")?)?;
            json!({"unit": rats(&a)})
        }
    })
}

fn class_table_json(t: &ClassTable) -> Value {
    json!({
        "order": lattice_to_json(&t.order),
        "representatives": t.reps.iter().map(lattice_to_json).collect::<Vec<_>>(),
        "w_classes": t.w_classes,
        "group": t.group,
        "group_table": t.group_table,
        "decisive": t.decisive,
    })
}

/// "Z[t]/(f)" when the order is the standard order of A_f, else its lattice.
fn order_name(inp: &Input, o: &Order) -> Value {
    match inp.f() {
        Ok(f) if !inp.has("order") && !inp.has("algebra") => Value::String(format!("Z[t]/({})", io::format_poly(&f))),
        _ => lattice_to_json(o),
    }
}

fn classify_op(op: ClassifyOp, inp: &Input) -> Result<Value> {
    let alg = inp.algebra()?;
    let b = &inp.budget;
    Ok(match op {
        ClassifyOp::MaximalOrder => json!({"lattice": lattice_to_json(&*classify::maximal_order(&inp.order(&alg, "order")?)?)}),
        ClassifyOp::Classes => class_table_json(&classify::enumerate_exact_classes(&inp.order(&alg, "order")?, b)?),
        ClassifyOp::Picard => {
            let o = inp.order(&alg, "order")?;
            let p = classify::picard(&o, b)?;
            json!({"order": order_name(inp, &o), "picard_order": p.order()})
        }
        ClassifyOp::Conductor => {
            let d = classify::conductor(&inp.order(&alg, "big")?, &inp.order(&alg, "small")?, b)?;
            json!({
                "conductor": lattice_to_json(&d.conductor),
                "bad_primes": primes(&d.bad_primes),
                "units_big": d.units_big,
                "units_small": d.units_small,
                "torsion_index": d.torsion_index,
            })
        }
        ClassifyOp::IndexFormula => {
            let r = classify::index_formula_check(&inp.order(&alg, "big")?, &inp.order(&alg, "small")?, b)?;
            json!({
                "left": rat_str(&r.left),
                "right": rat_str(&r.right),
                "holds": r.holds(),
                "group_big": r.group_big,
                "group_small": r.group_small,
                "units_big": r.units_big,
                "units_small": r.units_small,
                "torsion_index": r.torsion_index,
            })
        }
        ClassifyOp::PrfIso => {
            let iso = classify::prf_group_map(&inp.order(&alg, "order")?, b)?;
            json!({
                "source": class_table_json(&iso.source),
                "target": class_table_json(&iso.target),
                "map": iso.map,
                "lifts": iso.lifts.iter().map(lattice_to_json).collect::<Vec<_>>(),
            })
        }
        ClassifyOp::Faddeev => {
            let m = if inp.has("m_max") { io::usize_of(&inp.integer("m_max")?)? } else { 3 };
            let chain = classify::faddeev_chain(&inp.order(&alg, "order")?, m as u32)?;
            json!({"chain": chain.iter().map(|o| lattice_to_json(o)).collect::<Vec<_>>()})
        }
    })
}

fn matrix(inp: &Input, key: &str) -> Result<IntMatrix> {
    io::matrix_from_value(inp.get(key)?)
}

fn latmac_op(op: LatmacOp, inp: &Input) -> Result<Value> {
    let b = &inp.budget;
    Ok(match op {
        LatmacOp::Companion => {
            let f = inp.f()?;
            json!({"f": ints(&f), "B": matrix_to_json(&latmac::companion(&f)?)})
        }
        LatmacOp::ToLattice => {
            let f = inp.f()?;
            let l = latmac::matrix_to_lattice(&matrix(inp, "B")?, &f)?;
            json!({"algebra": {"poly": ints(&f)}, "lattice": lattice_to_json(&l)})
        }
        LatmacOp::ToMatrix => {
            let f = inp.f()?;
            let alg = latmac::algebra_of(&f)?;
            let m = latmac::lattice_to_matrix(&inp.lattice(&alg, "lattice")?)?;
            json!({"f": ints(&f), "B": matrix_to_json(&m)})
        }
        LatmacOp::Conjugate => match latmac::gl_conjugate(&matrix(inp, "B1")?, &matrix(inp, "B2")?, b)? {
            EquivalenceVerdict::Yes(u) => json!({"verdict": "yes", "conjugator": matrix_to_json(&u)}),
            EquivalenceVerdict::No => json!({"verdict": "no", "certificate": "no unit of the required norm"}),
            EquivalenceVerdict::UnknownWithinBound(k) => json!({"verdict": "unknown", "bound": k}),
        },
        LatmacOp::Count => {
            let f = inp.f()?;
            let orders = explicit_orders(inp, &f)?;
            let c = latmac::class_count(&f, orders.as_deref(), b)?;
            json!({
                "f": ints(&f),
                "total": c.total(),
                "orders": c.per_order.iter().map(|t| json!({"order": lattice_to_json(&t.order), "classes": t.class_count()})).collect::<Vec<_>>(),
                "matrices": c.matrices.iter().map(matrix_to_json).collect::<Vec<_>>(),
            })
        }
        LatmacOp::Semigroup => {
            let f = inp.f()?;
            let orders = explicit_orders(inp, &f)?;
            let s = latmac::s1f_semigroup(&f, orders.as_deref(), b)?;
            json!({
                "representatives": s.reps.iter().map(lattice_to_json).collect::<Vec<_>>(),
                "table": s.table,
                "division": s.division,
                "idempotents": s.analysis.idempotents,
                "w_classes": s.analysis.w_classes,
            })
        }
    })
}

fn explicit_orders(inp: &Input, f: &[BigInt]) -> Result<Option<Vec<Order>>> {
    let Some(v) = inp.fields.get("orders") else { return Ok(None) };
    let alg = latmac::algebra_of(f)?;
    let items = v.as_array().ok_or_else(|| Error::Parse("orders must be a list".into()))?;
    items.iter().map(|o| Order::new(io::lattice_from_value(o, &alg)?)).collect::<Result<Vec<_>>>().map(Some)
}
