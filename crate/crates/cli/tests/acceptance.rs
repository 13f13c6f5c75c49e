//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use jacinf_cli::parse_poly;
use jacinf_core::algebra::{Elem, SparsePoly};
use jacinf_core::analysis::*;
use jacinf_core::corpus::*;
use jacinf_core::resolution::*;

/// Per-map wall-clock bound for the `(x + y^n, y)` family.
const GRAPH_TIME: Duration = Duration::from_secs(5);
const CUSP_TIME: Duration = Duration::from_secs(1);
const CORPUS_TIME: Duration = Duration::from_secs(600);
const CORPUS_SIZE: u64 = 50;
const MAX_FACTORS: usize = 4;
const MAX_EXPONENT: u32 = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(fails: Vec<String>, ok: String) -> Outcome {
    if fails.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome { pass: false, detail: fails.join("; ") }
    }
}

fn node_id(tree: &ResolutionTree, name: &str) -> Option<usize> {
    tree.nodes.iter().position(|n| n.name == name)
}

/// Expected adjacency by name: `L - E2 - ... - En`, `E1 - En`, `En - ... - E(2n-1)`.
fn graph_by_name(n: usize) -> Vec<(String, String)> {
    let e = |i: usize| format!("E{i}");
    let mut out = vec![("L".to_string(), e(2)), (e(1), e(n))];
    out.extend((2..n).map(|i| (e(i), e(i + 1))));
    out.extend((n..2 * n - 1).map(|i| (e(i), e(i + 1))));
    out
}

fn criterion_graph() -> Outcome {
    let mut fails = Vec::new();
    let mut times = Vec::new();
    for n in 2..=5usize {
        let f = PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, n as u32])], &[(1, &[0, 1])]).unwrap();
        let start = Instant::now();
        let tree = match resolve(&f, &ResolveOptions::default()) {
            Ok(t) => t,
            Err(e) => {
                fails.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let elapsed = start.elapsed();
        times.push(format!("n={n} {:.2}s", elapsed.as_secs_f64()));
        if elapsed > GRAPH_TIME {
            fails.push(format!("n={n}: took {elapsed:?}"));
        }
        if tree.exceptional_count() != 2 * n - 1 {
            fails.push(format!("n={n}: {} exceptional nodes", tree.exceptional_count()));
            continue;
        }
        let want = graph_by_name(n);
        let mut want_ids: Vec<(usize, usize)> = Vec::new();
        for (a, b) in &want {
            match (node_id(&tree, a), node_id(&tree, b)) {
                (Some(x), Some(y)) => want_ids.push((x.min(y), x.max(y))),
                _ => fails.push(format!("n={n}: missing node {a} or {b}")),
            }
        }
        want_ids.sort_unstable();
        let got: Vec<_> = tree.edges.iter().copied().collect();
        if got != want_ids {
            fails.push(format!("n={n}: edges {got:?}, expected {want_ids:?}"));
        }
        let last = node_id(&tree, &format!("E{}", 2 * n - 1)).map(|i| &tree.nodes[i]);
        match last {
            Some(l) if l.pole_order == 6 && l.mult_t == Some(1) => {}
            Some(l) => fails.push(format!("n={n}: last node p={} a={:?}", l.pole_order, l.mult_t)),
            None => fails.push(format!("n={n}: no last node")),
        }
    }
    outcome(fails, times.join(", "))
}

/// Step-by-step blow-up calculator over integer polynomials, written
/// without the resolution engine. Points are searched at integer
/// coordinates only, which suffices for `(x + y^2, y)`.
mod hand {
    use std::collections::BTreeMap;

    pub type Poly = BTreeMap<(u32, u32), i128>;

    fn insert(p: &mut Poly, m: (u32, u32), c: i128) {
        let e = p.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            p.remove(&m);
        }
    }

    pub fn poly(terms: &[(i128, u32, u32)]) -> Poly {
        let mut p = Poly::new();
        for &(c, i, j) in terms {
            insert(&mut p, (i, j), c);
        }
        p
    }

    fn map_monomials(p: &Poly, f: impl Fn(u32, u32) -> (u32, u32)) -> Poly {
        let mut out = Poly::new();
        for (&(i, j), &c) in p {
            insert(&mut out, f(i, j), c);
        }
        out
    }

    fn binom(n: u32, k: u32) -> i128 {
        (0..k).fold(1i128, |acc, t| acc * (n - t) as i128 / (t + 1) as i128)
    }

    /// `p(u + du, v + dv)`.
    fn shift(p: &Poly, du: i128, dv: i128) -> Poly {
        let mut out = Poly::new();
        for (&(i, j), &c) in p {
            for a in 0..=i {
                for b in 0..=j {
                    let k = c * binom(i, a) * du.pow(i - a) * binom(j, b) * dv.pow(j - b);
                    insert(&mut out, (a, b), k);
                }
            }
        }
        out
    }

    fn order(p: &Poly, var: usize) -> u32 {
        p.keys().map(|m| if var == 0 { m.0 } else { m.1 }).min().unwrap_or(u32::MAX)
    }

    fn eval_on_axis(p: &Poly, var: usize, t: i128) -> i128 {
        p.iter()
            .filter(|(m, _)| if var == 0 { m.0 == 0 } else { m.1 == 0 })
            .map(|(m, c)| c * t.pow(if var == 0 { m.1 } else { m.0 }))
            .sum()
    }

    #[derive(Clone, Debug)]
    pub struct Curve {
        pub name: String,
        /// Exponent of the pulled-back holomorphic 2-form along the curve.
        pub form: i64,
        pub a: u32,
        pub s: i64,
    }

    #[derive(Clone)]
    struct Chart {
        tri: [Poly; 3],
        /// Curve on `u = 0` and on `v = 0`.
        axes: [Option<usize>; 2],
        /// Axis whose points are all searched; `None` searches the origin only.
        search: Option<usize>,
    }

    pub struct Resolution {
        pub curves: Vec<Curve>,
        pub centers: Vec<String>,
    }

    /// Resolves from one chart `[A : B : C]` in which the line at
    /// infinity is `v = 0` with 2-form exponent `form_l` and `a = ord_v C`.
    pub fn resolve(tri: [Poly; 3], form_l: i64, window: i128) -> Resolution {
        let a_l = order(&tri[2], 1);
        let mut curves = vec![Curve { name: "L".into(), form: form_l, a: a_l, s: 1 }];
        let mut centers = Vec::new();
        let mut work = vec![Chart { tri, axes: [None, Some(0)], search: Some(1) }];
        while let Some(ch) = work.pop() {
            let mut points = Vec::new();
            match ch.search {
                None => points.push((0, 0)),
                Some(axis) => {
                    for t in -window..=window {
                        let p = if axis == 0 { (0, t) } else { (t, 0) };
                        points.push(p);
                    }
                }
            }
            for (u0, v0) in points {
                let vanish = ch.tri.iter().all(|p| eval_on_axis(p, usize::from(u0 != 0), if u0 != 0 { u0 } else { v0 }) == 0);
                if !vanish {
                    continue;
                }
                // curves through the point
                let through: Vec<usize> = [(0usize, u0 == 0), (1, v0 == 0)]
                    .iter()
                    .filter(|(_, on)| *on)
                    .filter_map(|&(k, _)| ch.axes[k])
                    .collect();
                let id = curves.len();
                let form = through.iter().map(|&c| curves[c].form).sum::<i64>() + 1;
                for &c in &through {
                    curves[c].s -= 1;
                }
                centers.push(format!("E{id} at ({u0},{v0}) on {:?}", through.iter().map(|&c| curves[c].name.clone()).collect::<Vec<_>>()));
                let local: Vec<Poly> = ch.tri.iter().map(|p| shift(p, u0, v0)).collect();
                // chart a: (u, v) = (u, u w); E is u = 0, old v-axis is w = 0
                let ta: Vec<Poly> = local.iter().map(|p| map_monomials(p, |i, j| (i + j, j))).collect();
                let ka = ta.iter().map(|p| order(p, 0)).min().unwrap();
                let ta: Vec<Poly> = ta.iter().map(|p| map_monomials(p, |i, j| (i - ka, j))).collect();
                // chart b: (u, v) = (s v, v); E is v = 0, old u-axis is s = 0
                let tb: Vec<Poly> = local.iter().map(|p| map_monomials(p, |i, j| (i, i + j))).collect();
                let kb = tb.iter().map(|p| order(p, 1)).min().unwrap();
                let tb: Vec<Poly> = tb.iter().map(|p| map_monomials(p, |i, j| (i, j - kb))).collect();
                let a = order(&ta[2], 0);
                curves.push(Curve { name: format!("E{id}"), form, a, s: -1 });
                let keep_v = if v0 == 0 { ch.axes[1] } else { None };
                let keep_u = if u0 == 0 { ch.axes[0] } else { None };
                work.push(Chart { tri: [tb[0].clone(), tb[1].clone(), tb[2].clone()], axes: [keep_u, Some(id)], search: None });
                work.push(Chart { tri: [ta[0].clone(), ta[1].clone(), ta[2].clone()], axes: [Some(id), keep_v], search: Some(0) });
            }
        }
        Resolution { curves, centers }
    }
}

fn criterion_hand_f2() -> Outcome {
    // (x + y^2, y) at the point (1:0:0) at infinity, chart coordinates
    // (y, z) with x = 1/z and y = y/z: [z + y^2 : y z : z^2]. There
    // dx ^ dy = -z^-3 dz ^ dy. The other point of the line, (0:1:0), is
    // not a base point: [x z + 1 : z : z^2] at z = 0 is [1 : 0 : 0].
    let tri = [
        hand::poly(&[(1, 0, 1), (1, 2, 0)]),
        hand::poly(&[(1, 1, 1)]),
        hand::poly(&[(1, 0, 2)]),
    ];
    let calc = hand::resolve(tri, -3, 20);
    let hand_rows: BTreeMap<String, (i64, u32, i64)> =
        calc.curves.iter().map(|c| (c.name.clone(), (-2 * c.form, c.a, c.s))).collect();
    let want: BTreeMap<String, (i64, u32, i64)> = [
        ("L", (6, 2, -1)),
        ("E1", (4, 1, -2)),
        ("E2", (8, 2, -2)),
        ("E3", (6, 1, -1)),
    ]
    .into_iter()
    .map(|(n, v)| (n.to_string(), v))
    .collect();
    let mut fails = Vec::new();
    if hand_rows != want {
        fails.push(format!("calculator gives {hand_rows:?} via {:?}", calc.centers));
    }
    match resolve(&f_n(2), &ResolveOptions::default()) {
        Ok(tree) => {
            let engine: BTreeMap<String, (i64, u32, i64)> = tree
                .nodes
                .iter()
                .map(|n| (n.name.clone(), (n.pole_order, n.mult_t.unwrap_or(0), n.self_int)))
                .collect();
            if engine != hand_rows {
                fails.push(format!("engine gives {engine:?}, calculator {hand_rows:?}"));
            }
        }
        Err(e) => fails.push(e.to_string()),
    }
    let rows: Vec<String> = hand_rows.iter().map(|(n, (p, a, s))| format!("{n}({p},{a},{s})")).collect();
    outcome(fails, rows.join(" "))
}

fn criterion_cusp() -> Outcome {
    let start = Instant::now();
    let mut fails = Vec::new();
    let g = PolyMap::new(parse_poly("2x^3 + x y").unwrap(), parse_poly("3x^2 + y").unwrap()).unwrap();
    if g.jacobian() != parse_poly("y").unwrap() {
        fails.push(format!("jacobian {}", g.jacobian()));
    }
    let target = parse_poly("27x^2 - 4y^3").unwrap();
    // the hand parametrization t -> (2t^3, 3t^2) of the image of y = 0
    let xyt = jacinf_core::algebra::vars(&["x", "y", "t"]);
    let t = SparsePoly::var(target.field(), &xyt, 2);
    let along = target.into_vars(&xyt).unwrap().compose(&[t.pow(3).scale(&Elem::from_i64(2)), t.pow(2).scale(&Elem::from_i64(3)), t]);
    if !along.is_zero() {
        fails.push("27x^2 - 4y^3 does not vanish on (2t^3, 3t^2)".into());
    }
    let implicit = x_axis_parametrization(&g).map_err(|e| e.to_string()).and_then(|p| {
        let h = image_curve(&p).map_err(|e| e.to_string())?;
        let b = classify_branch(&p, &Elem::zero(), DEFAULT_SEED).map_err(|e| e.to_string())?;
        Ok((h, b))
    });
    match implicit {
        Ok((h, b)) => {
            let proportional = h.scale(&target.leading_coeff()) == target.scale(&h.leading_coeff()) && !h.is_zero();
            if !proportional {
                fails.push(format!("image {h} is not a multiple of {target}"));
            }
            if b != BranchType::Cusp(2) {
                fails.push(format!("branch {b}"));
            }
        }
        Err(e) => fails.push(e),
    }
    let elapsed = start.elapsed();
    if elapsed > CUSP_TIME {
        fails.push(format!("took {elapsed:?}"));
    }
    outcome(fails, format!("jacobian y, image 27x^2-4y^3, cusp(2), {:.3}s", elapsed.as_secs_f64()))
}

struct Resolved {
    label: String,
    map: PolyMap,
    tree: ResolutionTree,
}

struct Corpus {
    random: Vec<Resolved>,
    /// Random samples that failed to generate or resolve.
    errors: Vec<String>,
    elapsed: Duration,
}

fn build_corpus() -> Corpus {
    let start = Instant::now();
    let mut random = Vec::new();
    let mut errors = Vec::new();
    for seed in 0..CORPUS_SIZE {
        let n = 1 + (seed as usize % MAX_FACTORS);
        let s = match random_automorphism(seed, n, MAX_EXPONENT) {
            Ok(s) => s,
            Err(e) => {
                errors.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        if s.map.degree() > DEGREE_CAP {
            errors.push(format!("seed {seed}: degree {}", s.map.degree()));
        }
        match resolve(&s.map, &ResolveOptions::default()) {
            Ok(tree) => random.push(Resolved { label: format!("seed {seed}"), map: s.map, tree }),
            Err(e) => errors.push(format!("seed {seed}: {e}")),
        }
    }
    Corpus { random, errors, elapsed: start.elapsed() }
}

fn resolved(label: &str, src: &str) -> Result<Resolved, String> {
    let map = jacinf_cli::parse_map(src).map_err(|e| e.to_string())?;
    let tree = resolve(&map, &ResolveOptions::default()).map_err(|e| e.to_string())?;
    Ok(Resolved { label: label.into(), map, tree })
}

fn criterion_degree(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut fails = c.errors.clone();
    let mut cases: Vec<(&Resolved, usize)> = c.random.iter().map(|r| (r, 1)).collect();
    let extra: Vec<(Resolved, usize)> = [("squaring", "x^2 - y^2; 2x y", 4), ("identity", "x; y", 1)]
        .into_iter()
        .filter_map(|(l, s, d)| match resolved(l, s) {
            Ok(r) => Some((r, d)),
            Err(e) => {
                fails.push(format!("{l}: {e}"));
                None
            }
        })
        .collect();
    cases.extend(extra.iter().map(|(r, d)| (r, *d)));
    for (r, want) in &cases {
        let t2 = t_self_intersection(&r.tree).map(|s| s.t_squared);
        let deg = topological_degree(&r.map, DEFAULT_SEED);
        match (t2, deg) {
            (Ok(t2), Ok(d)) if t2 == d as i64 && d == *want => {}
            (t2, d) => fails.push(format!("{}: T^2 {t2:?}, degree {d:?}, expected {want}", r.label)),
        }
    }
    let elapsed = c.elapsed + start.elapsed();
    if elapsed > CORPUS_TIME {
        fails.push(format!("took {elapsed:?}"));
    }
    outcome(fails, format!("{} maps, {:.1}s", cases.len(), elapsed.as_secs_f64()))
}

fn criterion_certify(c: &Corpus) -> Outcome {
    let mut fails = c.errors.clone();
    for r in &c.random {
        match certify_tree(&r.tree) {
            Ok(cert) if cert.verdict == Verdict::Automorphism && cert.strong => {}
            Ok(cert) => fails.push(format!("{}: {} strong={} {:?}", r.label, cert.verdict, cert.strong, cert.reasons)),
            Err(e) => fails.push(format!("{}: {e}", r.label)),
        }
    }
    let xxy = PolyMap::new(parse_poly("x").unwrap(), parse_poly("x y").unwrap()).unwrap();
    match certify_automorphism(&xxy, &ResolveOptions::default()) {
        Ok(cert) if cert.verdict == Verdict::PreconditionFailed => {}
        other => fails.push(format!("(x, xy): {other:?}")),
    }
    outcome(fails, format!("{} automorphisms strong, (x, xy) precondition-failed", c.random.len()))
}

fn fixture_trees() -> (Vec<Resolved>, Vec<String>) {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for fx in known_examples() {
        match resolve(&fx.map, &ResolveOptions::default()) {
            Ok(tree) => out.push(Resolved { label: fx.name.clone(), map: fx.map, tree }),
            Err(e) => errors.push(format!("{}: {e}", fx.name)),
        }
    }
    (out, errors)
}

fn criterion_pairs(c: &Corpus, fixtures: &[Resolved]) -> Outcome {
    let mut fails = c.errors.clone();
    for r in c.random.iter().chain(fixtures) {
        let v = validate_pole_pairs(&r.tree);
        if !v.is_empty() {
            fails.push(format!("{}: {v:?}", r.label));
        }
    }
    let want = [((2, 4), PairClause::LowParentHighChild), ((-4, -4), PairClause::EqualNegative)];
    for ((name, tree), (pair, clause)) in synthetic_pair_trees().into_iter().zip(want) {
        let v = validate_pole_pairs(&tree);
        let ok = v.len() == 1 && v[0].pair == pair && v[0].clause == clause;
        if !ok {
            fails.push(format!("{name}: {v:?}"));
        }
    }
    outcome(fails, format!("{} trees clean, 2 synthetic violations flagged", c.random.len() + fixtures.len()))
}

fn criterion_relations(c: &Corpus, fixtures: &[Resolved]) -> Outcome {
    let mut fails = c.errors.clone();
    let mut checked = 0;
    for r in c.random.iter().chain(fixtures) {
        if let Some(n) = r.tree.nodes.iter().find(|n| n.pole_order % 2 != 0) {
            fails.push(format!("{}: odd pole order at {}", r.label, n.name));
        }
        match check_order_relations(&r.tree, DEFAULT_SEED) {
            Ok(rep) if !rep.applicable => {
                if jacobian_is_unit(&r.map).unwrap_or(true) {
                    fails.push(format!("{}: relations skipped", r.label));
                }
            }
            Ok(rep) => {
                checked += rep.checks.len();
                for ch in rep.checks.iter().filter(|ch| !ch.holds) {
                    fails.push(format!("{}: {} at node {}", r.label, ch, ch.node));
                }
            }
            Err(e) => fails.push(format!("{}: {e}", r.label)),
        }
    }
    outcome(fails, format!("{checked} relations hold, all pole orders even"))
}

fn criterion_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_jacinf");
    let mut fails = Vec::new();
    let fixtures = known_examples();
    for fx in &fixtures {
        let run = || Command::new(exe).args(["analyze", "--json", &fx.map.to_string()]).env_remove("JACINF_SEED").output();
        match (run(), run()) {
            (Ok(a), Ok(b)) if a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty() => {}
            (Ok(a), Ok(b)) => fails.push(format!(
                "{}: status {:?}/{:?}, identical={}, stderr {}",
                fx.name,
                a.status.code(),
                b.status.code(),
                a.stdout == b.stdout,
                String::from_utf8_lossy(&a.stderr).trim()
            )),
            (a, b) => fails.push(format!("{}: {:?} {:?}", fx.name, a.err(), b.err())),
        }
    }
    outcome(fails, format!("{} fixtures byte-identical", fixtures.len()))
}

fn main() {
    let corpus = build_corpus();
    let (fixtures, fixture_errors) = fixture_trees();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("graph of (x + y^n, y), n = 2..5", criterion_graph()),
        ("hand resolution of (x + y^2, y)", criterion_hand_f2()),
        ("cusp example", criterion_cusp()),
        ("T^2 equals topological degree", criterion_degree(&corpus)),
        ("certifier on the corpus", criterion_certify(&corpus)),
        ("pole-pair exclusion", criterion_pairs(&corpus, &fixtures)),
        ("order relations and parity", criterion_relations(&corpus, &fixtures)),
        ("analyze output is deterministic", criterion_determinism()),
    ];
    if !fixture_errors.is_empty() {
        for (_, o) in results.iter_mut().skip(5).take(2) {
            o.pass = false;
            o.detail = format!("{}; {}", fixture_errors.join("; "), o.detail);
        }
    }
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
