//! Invariant and oracle checks returning a description of the first failure.

use std::collections::{BTreeMap, BTreeSet};

use toric_radiant::coxaction::{self, CoxModel};
use toric_radiant::groups::{self, RootGraph, RootSet};
use toric_radiant::liealg::{self, BracketTable};
use toric_radiant::roots::{self, Parity};
use toric_radiant::{IntVector, RayMatrix, Root, RootSystem};

use super::{brute_open_orbit_subgroups, brute_positive, brute_roots, names};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label(a: &RayMatrix) -> String {
    let rows: Vec<String> = a
        .rows()
        .iter()
        .map(|r| {
            r.coords()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    IntVector::unit(n, i).coords().to_vec()
}

fn elementary(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = -1;
    e[j] = 1;
    e
}

/// Every root with its ray, as the library reports them.
fn library_roots(a: &RayMatrix) -> BTreeMap<Vec<i64>, usize> {
    roots::demazure_roots(a)
        .per_ray
        .iter()
        .enumerate()
        .flat_map(|(l, rs)| rs.iter().map(move |e| (e.coords().to_vec(), l)))
        .collect()
}

/// Root enumeration equals the box scan, on the input and canonical matrix.
pub fn roots_match_brute(a: &RayMatrix) -> Check {
    let brute = brute_roots(a);
    ensure(library_roots(a) == brute, || {
        format!("{}: roots differ from the box scan", label(a))
    })?;
    let rs = RootSystem::new(a);
    let expected = brute_positive(rs.matrix());
    for (i, want) in expected.iter().enumerate() {
        let got: BTreeSet<Vec<i64>> = rs.positive(i).iter().map(|r| r.coords().to_vec()).collect();
        ensure(&got == want, || {
            format!("{}: positive roots on ray {} differ", label(a), i + 1)
        })?;
    }
    Ok(())
}

/// A non-trivial `ℜ_i` contains an elementary root.
pub fn elementary_roots_exist(a: &RayMatrix) -> Check {
    let n = a.n();
    let all = library_roots(a);
    for i in 0..n {
        let on_i: Vec<&Vec<i64>> = all
            .iter()
            .filter(|(_, &l)| l == i)
            .map(|(e, _)| e)
            .collect();
        let basic: Vec<i64> = unit(n, i).iter().map(|x| -x).collect();
        if on_i != [&basic] {
            let has = (0..n).any(|j| j != i && all.contains_key(&elementary(n, i, j)));
            ensure(has, || {
                format!("{}: ℜ_{} has no elementary root", label(a), i + 1)
            })?;
        }
    }
    Ok(())
}

/// `q_i` is a root iff every root of `ℜ_i` is semisimple.
pub fn unit_root_iff_semisimple(a: &RayMatrix) -> Check {
    let n = a.n();
    let all = library_roots(a);
    for i in 0..n {
        let q_is_root = all.contains_key(&unit(n, i));
        let all_semisimple = all
            .iter()
            .filter(|(_, &l)| l == i)
            .all(|(e, _)| all.contains_key(&e.iter().map(|x| -x).collect::<Vec<_>>()));
        ensure(q_is_root == all_semisimple, || {
            format!(
                "{}: q_{} root = {q_is_root}, ℜ_{} semisimple = {all_semisimple}",
                label(a),
                i + 1,
                i + 1
            )
        })?;
    }
    Ok(())
}

/// `−q_i + q_j` is a root iff column `i` dominates column `j`; when the
/// columns are equal, `e ↦ e − q_i + q_j` maps `ℜ_j ∖ {−q_j + q_i}` onto
/// `ℜ_i ∖ {−q_i + q_j}`.
pub fn elementary_roots_follow_preorder(a: &RayMatrix) -> Check {
    let n = a.n();
    let all = library_roots(a);
    let cols: Vec<Vec<i64>> = (0..n).map(|i| a.column(i).coords().to_vec()).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dominates = cols[i].iter().zip(&cols[j]).all(|(x, y)| x >= y);
            let is_root = all.contains_key(&elementary(n, i, j));
            ensure(dominates == is_root, || {
                format!(
                    "{}: −q{}+q{} root = {is_root}, column dominance = {dominates}",
                    label(a),
                    i + 1,
                    j + 1
                )
            })?;
            if cols[i] == cols[j] {
                let on = |k: usize, skip: Vec<i64>| -> BTreeSet<Vec<i64>> {
                    all.iter()
                        .filter(|(e, &l)| l == k && **e != skip)
                        .map(|(e, _)| e.clone())
                        .collect()
                };
                let from = on(j, elementary(n, j, i));
                let to = on(i, elementary(n, i, j));
                let image: BTreeSet<Vec<i64>> = from
                    .iter()
                    .map(|e| {
                        let mut f = e.clone();
                        f[i] -= 1;
                        f[j] += 1;
                        f
                    })
                    .collect();
                ensure(image == to, || {
                    format!(
                        "{}: shift ℜ_{} → ℜ_{} is not a bijection",
                        label(a),
                        j + 1,
                        i + 1
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// In canonical order a unipotent root on basis ray `i` vanishes on the
/// earlier basis rays, and a semisimple elementary root joins one class.
pub fn canonical_support(a: &RayMatrix) -> Check {
    let rs = RootSystem::new(a);
    let report = roots::demazure_roots(rs.matrix());
    let pre = rs.preorder();
    let n = rs.n();
    for d in &report.all_roots {
        let (i, e) = (d.root.ray, d.root.coords());
        if i >= n {
            continue;
        }
        if d.parity == Parity::Unipotent {
            ensure(e[..i].iter().all(|&x| x == 0), || {
                format!(
                    "{}: unipotent root {} has support before its ray",
                    label(a),
                    d.root
                )
            })?;
        }
        let elementary_to = (0..n).find(|&j| j != i && e == elementary(n, i, j).as_slice());
        if let (Some(j), Parity::Semisimple) = (elementary_to, d.parity) {
            if j > i {
                ensure(pre.equivalent(i, j), || {
                    format!("{}: semisimple {} joins two classes", label(a), d.root)
                })?;
            }
        }
    }
    Ok(())
}

pub fn jacobi(a: &RayMatrix) -> Check {
    let rs = RootSystem::new(a);
    let t = BracketTable::full(&rs);
    t.check_antisymmetry()
        .map_err(|e| format!("{}: {e}", label(a)))?;
    t.check_jacobi().map_err(|e| format!("{}: {e}", label(a)))
}

/// Inner-then-outer paths can be rerouted outer-then-inner, and the
/// `↑`-sets need only inner arrows.
pub fn graph_lemmas(m: &RootSet) -> Check {
    let g = groups::root_graph(m).map_err(|e| e.to_string())?;
    let has = |from: usize, to: usize, inner: bool| {
        g.arrows
            .iter()
            .any(|x| x.from == from && x.to == to && x.inner == inner)
    };
    for x in g.arrows.iter().filter(|x| x.inner) {
        for y in g.arrows.iter().filter(|y| !y.inner && y.from == x.to) {
            let reroute =
                (0..g.vertices.len()).any(|b| has(x.from, b, false) && has(b, y.to, true));
            ensure(reroute, || {
                format!(
                    "{m}: inner {} → {} then outer → {} has no outer-inner reroute",
                    g.vertices[x.from], g.vertices[x.to], g.vertices[y.to]
                )
            })?;
        }
    }
    check_inner_up(&g, m)
}

fn check_inner_up(g: &RootGraph, m: &RootSet) -> Check {
    let top = g.longest_path().unwrap_or(0) + 1;
    for k in 0..=top {
        ensure(g.up(k) == g.inner_up(k), || {
            format!("{m}: ↑{k} needs outer arrows")
        })?;
    }
    Ok(())
}

/// Class at most `max_i |M_i|`, and brackets of `M` stay in `M`.
pub fn class_bound_and_closure(rs: &RootSystem, m: &RootSet) -> Check {
    let s = groups::series_report(rs, m).map_err(|e| e.to_string())?;
    let widest = (0..rs.n()).map(|i| m.part(i).len()).max().unwrap_or(0);
    ensure(s.nilpotency_class <= widest, || {
        format!(
            "{m}: class {} exceeds max |M_i| = {widest}",
            s.nilpotency_class
        )
    })?;
    for e in m.iter() {
        for f in m.iter() {
            if let Some(b) = liealg::bracket(rs, e, f).map_err(|x| x.to_string())? {
                ensure(m.contains(&b.result), || {
                    format!("{m}: [{e}, {f}] = {} leaves M", b.result)
                })?;
            }
        }
    }
    Ok(())
}

/// Graph series equal the bracket-table series.
pub fn series_match_oracle(rs: &RootSystem, m: &RootSet, table: &BracketTable) -> Check {
    let s = groups::series_report(rs, m).map_err(|e| e.to_string())?;
    let o = liealg::lie_series_oracle(m.roots(), table);
    let plain =
        |v: &[RootSet]| -> Vec<Vec<Root>> { v.iter().map(|x| x.roots().to_vec()).collect() };
    ensure(plain(&s.lower) == o.lower, || {
        format!("{m}: lower series differ")
    })?;
    ensure(plain(&s.upper) == o.upper, || {
        format!("{m}: upper series differ")
    })?;
    ensure(plain(&s.derived) == o.derived, || {
        format!("{m}: derived series differ")
    })
}

/// `C(U)` from the pairing rule equals the kernel of the bracket map.
pub fn center_matches_oracle(rs: &RootSystem, m: &RootSet, table: &BracketTable) -> Check {
    let c = groups::center(rs, m).map_err(|e| e.to_string())?;
    let lie = liealg::lie_center(m.roots(), table);
    ensure(c.roots.roots() == lie.roots.as_slice(), || {
        format!(
            "{m}: center {} vs Lie center {:?}",
            c.roots,
            names(&lie.roots)
        )
    })?;
    ensure(lie.kernel_dim == c.indices.len(), || {
        format!(
            "{m}: kernel dimension {} vs |C(U)| = {}",
            lie.kernel_dim,
            c.indices.len()
        )
    })
}

/// Enumeration equals the subset filter when `|ℜ^+|` is small.
pub fn enumeration_matches_brute(rs: &RootSystem) -> Result<bool, String> {
    if rs.positive_roots().len() > 14 {
        return Ok(false);
    }
    let got = groups::enumerate_open_orbit_subgroups(rs, groups::DEFAULT_MAX_RESULTS)
        .map_err(|e| e.to_string())?
        .subgroups;
    let want = brute_open_orbit_subgroups(rs);
    ensure(got == want, || {
        format!(
            "{}: {} subgroups enumerated, {} by filtering",
            label(rs.matrix()),
            got.len(),
            want.len()
        )
    })?;
    Ok(true)
}

/// Up to `limit` open-orbit subgroups; a capped run keeps its partial list.
pub fn some_subgroups(rs: &RootSystem, limit: usize) -> Vec<RootSet> {
    match groups::enumerate_open_orbit_subgroups(rs, limit) {
        Ok(e) => e.subgroups,
        Err(groups::GroupError::CapExceeded { partial, .. }) => partial,
        Err(e) => panic!("enumeration failed: {e}"),
    }
}

/// All module invariants on one matrix, with graph checks on up to
/// `limit` subgroups.
pub fn property_suite(a: &RayMatrix, limit: usize) -> Check {
    roots_match_brute(a)?;
    elementary_roots_exist(a)?;
    unit_root_iff_semisimple(a)?;
    elementary_roots_follow_preorder(a)?;
    canonical_support(a)?;
    jacobi(a)?;
    let rs = RootSystem::new(a);
    let full = RootSet::full(&rs);
    graph_lemmas(&full)?;
    class_bound_and_closure(&rs, &full)?;
    for m in some_subgroups(&rs, limit) {
        graph_lemmas(&m)?;
        class_bound_and_closure(&rs, &m)?;
    }
    Ok(())
}

/// Root scan, subset filter, series and center oracles on one matrix.
pub fn oracle_suite(a: &RayMatrix, limit: usize) -> Check {
    roots_match_brute(a)?;
    let rs = RootSystem::new(a);
    enumeration_matches_brute(&rs)?;
    let table = BracketTable::full(&rs);
    let full = RootSet::full(&rs);
    series_match_oracle(&rs, &full, &table)?;
    center_matches_oracle(&rs, &full, &table)?;
    for m in some_subgroups(&rs, limit) {
        series_match_oracle(&rs, &m, &table)?;
        center_matches_oracle(&rs, &m, &table)?;
    }
    Ok(())
}

/// The conjugation identity for every positive pair on distinct rays with
/// `d ≤ 4`; returns the number of pairs checked.
pub fn conjugation_suite(a: &RayMatrix) -> Result<usize, String> {
    let rs = RootSystem::new(a);
    let model = CoxModel::new(&rs, 2);
    let s = model.param(0).map_err(|e| e.to_string())?;
    let t = model.param(1).map_err(|e| e.to_string())?;
    let pos = rs.positive_roots();
    let mut checked = 0;
    for e in &pos {
        for f in pos
            .iter()
            .filter(|f| f.ray > e.ray && e.coords()[f.ray] <= 4)
        {
            let ok =
                coxaction::verify_conjugation(&model, e, f, &s, &t).map_err(|x| x.to_string())?;
            ensure(ok, || {
                format!("{}: conjugation fails for {e}, {f}", label(a))
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}
