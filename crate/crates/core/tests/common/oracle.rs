//! Brute-force oracles. Nothing here calls the engine's algorithms; the
//! engine is only used at the call sites to produce the values under test.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use h1loc_core::linalg::{dual_constraints, howell_form, solve_linear};
use h1loc_core::{ModMatrix, ModVector, ModulusContext, SubmoduleBasis};

pub type M2 = [u64; 4];

pub fn mat_mul(a: M2, b: M2, q: u64) -> M2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    ]
}

pub fn mat_apply(a: M2, v: [u64; 2], q: u64) -> [u64; 2] {
    let a = a.map(|x| x % q);
    [(a[0] * v[0] + a[1] * v[1]) % q, (a[2] * v[0] + a[3] * v[1]) % q]
}

fn add2(a: [u64; 2], b: [u64; 2], q: u64) -> [u64; 2] {
    [(a[0] + b[0]) % q, (a[1] + b[1]) % q]
}

fn sub2(a: [u64; 2], b: [u64; 2], q: u64) -> [u64; 2] {
    [(a[0] + q - b[0]) % q, (a[1] + q - b[1]) % q]
}

/// Every element of the group generated by `gens` over Z/q, identity first.
pub fn closure(gens: &[M2], q: u64, cap: usize) -> Option<Vec<M2>> {
    let id = [1, 0, 0, 1];
    let mut seen = HashSet::from([id]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = mat_mul(g, x, q);
            if seen.insert(y) {
                if out.len() >= cap {
                    return None;
                }
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    Some(out)
}

/// Counts for a group over Z/`group_q` acting on (Z/`module_q`)^2 through
/// reduction of matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCohomology {
    pub z1: u128,
    pub b1: u128,
    pub z1_loc: u128,
    /// Generator values of every cocycle.
    pub cocycles: Vec<Vec<[u64; 2]>>,
    /// Generator values of every locally trivial cocycle.
    pub local_cocycles: Vec<Vec<[u64; 2]>>,
}

impl BruteCohomology {
    pub fn h1(&self) -> u128 {
        self.z1 / self.b1
    }

    pub fn h1_loc(&self) -> u128 {
        self.z1_loc / self.b1
    }
}

fn module_elements(q: u64) -> Vec<[u64; 2]> {
    (0..q).flat_map(|a| (0..q).map(move |b| [a, b])).collect()
}

/// Tries every assignment of values to the generators and keeps the ones that
/// extend to a function satisfying `f(ab) = f(a) + a f(b)` on all pairs.
pub fn brute_cohomology(gens: &[M2], group_q: u64, module_q: u64) -> BruteCohomology {
    let elems = closure(gens, group_q, 10_000).expect("small group");
    let index = |m: &M2| elems.iter().position(|x| x == m).unwrap();
    let n = elems.len();
    let module = module_elements(module_q);
    let images: Vec<HashSet<[u64; 2]>> = elems
        .iter()
        .map(|&x| module.iter().map(|&m| sub2(mat_apply(x, m, module_q), m, module_q)).collect())
        .collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| index(&mat_mul(a, b, group_q))).collect())
        .collect();
    let gen_idx: Vec<usize> = gens.iter().map(|g| index(&g.map(|x| x % group_q))).collect();

    let k = gens.len();
    let total = (module.len() as u64).pow(k as u32);
    let mut cocycles = Vec::new();
    let mut local_cocycles = Vec::new();
    for code in 0..total {
        let mut c = code;
        let vals: Vec<[u64; 2]> = (0..k)
            .map(|_| {
                let v = module[(c % module.len() as u64) as usize];
                c /= module.len() as u64;
                v
            })
            .collect();
        // f(g y) = f(g) + g f(y), filled breadth-first from the identity.
        let mut f: Vec<Option<[u64; 2]>> = vec![None; n];
        f[0] = Some([0, 0]);
        let mut queue = VecDeque::from([0usize]);
        let mut ok = true;
        while let Some(y) = queue.pop_front() {
            for (j, &g) in gen_idx.iter().enumerate() {
                let x = table[g][y];
                let v = add2(vals[j], mat_apply(elems[g], f[y].unwrap(), module_q), module_q);
                match f[x] {
                    None => {
                        f[x] = Some(v);
                        queue.push_back(x);
                    }
                    Some(w) if w != v => ok = false,
                    _ => {}
                }
            }
        }
        if !ok {
            continue;
        }
        let f: Vec<[u64; 2]> = f.into_iter().map(Option::unwrap).collect();
        let identity = (0..n).all(|a| {
            (0..n).all(|b| f[table[a][b]] == add2(f[a], mat_apply(elems[a], f[b], module_q), module_q))
        });
        if !identity {
            continue;
        }
        if (0..n).all(|x| images[x].contains(&f[x])) {
            local_cocycles.push(vals.clone());
        }
        cocycles.push(vals);
    }

    let coboundaries: HashSet<Vec<[u64; 2]>> = module
        .iter()
        .map(|&m| elems.iter().map(|&x| sub2(mat_apply(x, m, module_q), m, module_q)).collect())
        .collect();
    BruteCohomology {
        z1: cocycles.len() as u128,
        b1: coboundaries.len() as u128,
        z1_loc: local_cocycles.len() as u128,
        cocycles,
        local_cocycles,
    }
}

/// All vectors of (Z/q)^d.
pub fn all_vectors(q: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// The Z/q-span of `rows`, closed under adding generators.
pub fn brute_span(q: u64, d: usize, rows: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    let zero = vec![0; d];
    let mut seen = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for r in rows {
            let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % q).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn mat_vec(rows: &[Vec<u64>], x: &[u64], q: u64) -> Vec<u64> {
    rows.iter()
        .map(|r| r.iter().zip(x).fold(0, |acc, (a, b)| (acc + a * b) % q))
        .collect()
}

/// Checks the linear-algebra kernel on one instance: Howell canonicity under
/// a change of generating set, span agreement, solver soundness and
/// completeness, kernel size, and the dual-constraint round trip.
pub fn check_linalg_instance(p: u64, n: u32, rows: &[Vec<u64>], b: &[u64]) -> Result<(), String> {
    let ctx = ModulusContext::new(p, n).map_err(|e| e.to_string())?;
    let q = ctx.modulus();
    let d = rows.first().map_or(0, Vec::len);
    let m = ModMatrix::new(ctx, rows.len(), d, rows.concat()).map_err(|e| e.to_string())?;

    // Howell canonicity: same span from a different generating set.
    let h = howell_form(&m);
    let mut other: Vec<Vec<u64>> = rows.iter().rev().cloned().collect();
    if other.len() >= 2 {
        let (a, rest) = other.split_at_mut(1);
        for (x, y) in rest[0].iter_mut().zip(&a[0]) {
            *x = (*x + (q - 1) * y) % q;
        }
    }
    let sum: Vec<u64> = (0..d).map(|j| rows.iter().map(|r| r[j]).sum::<u64>() % q).collect();
    other.push(sum);
    let other_m = ModMatrix::new(ctx, other.len(), d, other.concat()).map_err(|e| e.to_string())?;
    if howell_form(&other_m) != h {
        return Err("Howell form depends on the generating set".into());
    }
    let span = brute_span(q, d, rows);
    if h.order() != Some(span.len() as u128) {
        return Err(format!("span order {:?} vs brute {}", h.order(), span.len()));
    }
    let vectors = all_vectors(q, d);
    for v in &vectors {
        if h.contains(&ModVector::new(ctx, v.clone())) != span.contains(v) {
            return Err(format!("membership of {v:?} disagrees"));
        }
    }

    // Dual constraints cut out exactly the span.
    let k = dual_constraints(&h);
    let k_rows: Vec<Vec<u64>> = (0..k.rows()).map(|r| k.row(r).to_vec()).collect();
    for v in &vectors {
        let zero = mat_vec(&k_rows, v, q).iter().all(|&x| x == 0);
        if zero != span.contains(v) {
            return Err(format!("dual constraints misclassify {v:?}"));
        }
    }

    // Solver: A x = b over x in (Z/q)^d.
    let bv = ModVector::new(ctx, b.to_vec());
    let sol = solve_linear(&m, &bv).map_err(|e| e.to_string())?;
    let solutions: Vec<&Vec<u64>> = vectors.iter().filter(|x| mat_vec(rows, x, q) == b).collect();
    let kernel_size = vectors.iter().filter(|x| mat_vec(rows, x, q).iter().all(|&y| y == 0)).count();
    match &sol.particular {
        Some(x) if mat_vec(rows, x.coords(), q) != b => return Err("particular solution is wrong".into()),
        Some(_) if solutions.is_empty() => return Err("solution reported for inconsistent system".into()),
        None if !solutions.is_empty() => return Err("solver missed an existing solution".into()),
        _ => {}
    }
    if sol.kernel.order() != Some(kernel_size as u128) {
        return Err(format!("kernel order {:?} vs brute {kernel_size}", sol.kernel.order()));
    }
    if !solutions.is_empty() && solutions.len() != kernel_size {
        return Err("solution set is not a coset of the kernel".into());
    }
    for x in &vectors {
        let in_kernel = mat_vec(rows, x, q).iter().all(|&y| y == 0);
        if sol.kernel.contains(&ModVector::new(ctx, x.clone())) != in_kernel {
            return Err(format!("kernel membership of {x:?} disagrees"));
        }
    }
    Ok(())
}

/// Engine-vs-oracle comparison for one group of order at most 8.
pub fn check_cohomology_instance(
    gens: &[M2],
    p: u64,
    n: u32,
    kind: h1loc_core::ModuleKind,
) -> Result<BruteCohomology, String> {
    let brute = check_cohomology_instance_any_size(gens, p, n, kind)?;
    let order = closure(gens, p.pow(n), 10_000).map_or(usize::MAX, |e| e.len());
    if order > 8 {
        return Err(format!("instance has |G| = {order} > 8"));
    }
    Ok(brute)
}

/// Engine-vs-oracle comparison for one group and module.
pub fn check_cohomology_instance_any_size(
    gens: &[M2],
    p: u64,
    n: u32,
    kind: h1loc_core::ModuleKind,
) -> Result<BruteCohomology, String> {
    use h1loc_core::{CocycleSystem, FiniteMatrixGroup, Mat2, Module};
    let ctx = ModulusContext::new(p, n).map_err(|e| e.to_string())?;
    let module = Module::new(kind, ctx).map_err(|e| e.to_string())?;
    let mq = module.ctx().modulus();
    let g = FiniteMatrixGroup::generate(ctx, &gens.iter().map(|&m| Mat2(m.map(|x| x % ctx.modulus()))).collect::<Vec<_>>(), 10_000)
        .map_err(|e| e.to_string())?;
    let brute = brute_cohomology(gens, ctx.modulus(), mq);
    let sys = CocycleSystem::new(&g, module).map_err(|e| e.to_string())?;

    let z1: &SubmoduleBasis = sys.cocycle_space();
    let b1 = sys.coboundary_space();
    if z1.order() != Some(brute.z1) {
        return Err(format!("|Z1| engine {:?} brute {}", z1.order(), brute.z1));
    }
    if b1.order() != Some(brute.b1) {
        return Err(format!("|B1| engine {:?} brute {}", b1.order(), brute.b1));
    }
    for c in &brute.cocycles {
        let v = ModVector::new(module.ctx(), c.concat());
        if !z1.contains(&v) {
            return Err(format!("brute cocycle {c:?} missing from Z1"));
        }
    }
    let loc = sys.local_cocycle_space();
    if loc.order() != Some(brute.z1_loc) {
        return Err(format!("|Z1_loc| engine {:?} brute {}", loc.order(), brute.z1_loc));
    }
    for c in &brute.local_cocycles {
        if !loc.contains(&ModVector::new(module.ctx(), c.concat())) {
            return Err(format!("brute local cocycle {c:?} missing from Z1_loc"));
        }
    }
    let h1 = sys.h1().map_err(|e| e.to_string())?;
    let h1_loc = sys.h1_loc().map_err(|e| e.to_string())?;
    if h1.order as u128 != brute.h1() || h1_loc.order as u128 != brute.h1_loc() {
        return Err(format!(
            "H1 {} / H1_loc {} vs brute {} / {}",
            h1.order,
            h1_loc.order,
            brute.h1(),
            brute.h1_loc()
        ));
    }
    Ok(brute)
}

/// Groups of order at most 8 over Z/p^n with |(Z/p^n)^2| at most 81, paired
/// with each module that exists for them. At least twenty entries.
pub fn small_instances() -> Vec<(Vec<M2>, u64, u32, h1loc_core::ModuleKind)> {
    use h1loc_core::ModuleKind::*;
    let groups: Vec<(Vec<M2>, u64, u32)> = vec![
        (vec![], 3, 1),
        (vec![[2, 0, 0, 2]], 3, 1),
        (vec![[1, 1, 0, 1]], 3, 1),
        (vec![[2, 0, 0, 1]], 3, 1),
        (vec![[1, 1, 0, 1], [2, 0, 0, 1]], 3, 1),
        (vec![[0, 2, 1, 0]], 3, 1),
        (vec![[0, 1, 2, 2]], 3, 1),
        (vec![[0, 2, 1, 0], [1, 0, 0, 2]], 3, 1),
        (vec![[1, 3, 0, 1]], 3, 2),
        (vec![[8, 0, 0, 1]], 3, 2),
        (vec![[1, 3, 0, 1], [8, 0, 0, 1]], 3, 2),
        (vec![[4, 0, 0, 7]], 3, 2),
        (vec![[1, 3, 3, 1]], 3, 2),
        (vec![[0, 8, 1, 0]], 3, 2),
        (vec![[4, 0, 0, 1]], 5, 1),
        (vec![[2, 0, 0, 1]], 5, 1),
        (vec![[1, 1, 0, 1]], 5, 1),
        (vec![[0, 4, 1, 0]], 5, 1),
        (vec![[4, 0, 0, 1], [1, 0, 0, 4]], 5, 1),
        (vec![[6, 0, 0, 1]], 7, 1),
        (vec![[2, 0, 0, 1]], 7, 1),
        (vec![[0, 6, 1, 0], [6, 0, 0, 1]], 7, 1),
    ];
    let mut out = Vec::new();
    for (gens, p, n) in groups {
        out.push((gens.clone(), p, n, Full));
        if n == 2 {
            out.push((gens.clone(), p, n, PTorsion));
            out.push((gens, p, n, PQuotient));
        }
    }
    out
}
