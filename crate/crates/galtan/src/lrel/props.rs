//! Exhaustive checks of the implication chains between the axioms and the
//! commuting conditions, over every small instance into `2` or `ℓ(Z₂)`.

use super::{
    axioms, check_diamond, check_diamond1, check_diamond2, check_triangle, product, restrict, AxiomReport, LRel, Span,
};
use crate::suplat::{all_functions, Elem, FinFn, Lattice, Relation};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// The checked statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    /// `◇₁(p',q')` for `θ → λ'` and `◇₂(p,q)` for `θ → λ` give `◇(R,S)`.
    SpanDiamond,
    /// `◇₁(f,g)` or `◇₂(f,g)` gives `▷(f,g)`.
    DiamondTriangle,
    /// Each axiom holding for `λ` and `λ'` holds for `λ ⊠ λ'`.
    ProductAxioms,
    /// The meet formulas for `λ⟨p r, b⟩ ∧ λ'⟨p' r, b'⟩` and its mirror.
    MeetFormula,
    /// `▷` with `λ` ed and `λ'` uv gives `◇₁`; with su and in gives `◇₂`.
    TriangleDiamond,
    /// Both `▷` along the span legs, `λ` in, `λ'` uv, `θ` ed and su give `◇(R,S)`.
    TrianglesSpanDiamond,
    /// For ℓ-bijections and relations, `◇(R,S)` makes the restriction an ℓ-bijection.
    RestrictionBijection,
    /// For ℓ-bijections and relations, `◇(R,S)` iff the restriction is an ℓ-bijection.
    DiamondIffBijection,
}

impl Prop {
    pub const ALL: [Prop; 8] = [
        Prop::SpanDiamond,
        Prop::DiamondTriangle,
        Prop::ProductAxioms,
        Prop::MeetFormula,
        Prop::TriangleDiamond,
        Prop::TrianglesSpanDiamond,
        Prop::RestrictionBijection,
        Prop::DiamondIffBijection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Prop::SpanDiamond => "span-diamond",
            Prop::DiamondTriangle => "diamond-triangle",
            Prop::ProductAxioms => "product-axioms",
            Prop::MeetFormula => "meet-formula",
            Prop::TriangleDiamond => "triangle-diamond",
            Prop::TrianglesSpanDiamond => "triangles-span-diamond",
            Prop::RestrictionBijection => "restriction-bijection",
            Prop::DiamondIffBijection => "diamond-iff-bijection",
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Prop {
    type Err = String;
    fn from_str(s: &str) -> Result<Prop, String> {
        Prop::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown proposition `{s}`"))
    }
}

/// The value lattice of the enumerated tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueLattice {
    Two,
    /// `ℓ(Z₂)`, the power set of a two-element group.
    PowerZ2,
}

impl ValueLattice {
    pub fn lattice(self) -> Lattice {
        match self {
            ValueLattice::Two => Lattice::two(),
            ValueLattice::PowerZ2 => Lattice::power_set(vec!["e".into(), "s".into()], &Default::default())
                .expect("four elements"),
        }
    }
}

/// Bounds of an exhaustive instance space: sizes of the base sets
/// `X, Y, X', Y'` and of span apexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    pub values: ValueLattice,
    pub max_base: usize,
    pub max_apex: usize,
}

impl Space {
    pub fn two(bound: usize) -> Space {
        Space { values: ValueLattice::Two, max_base: bound, max_apex: bound }
    }

    pub fn power_z2(bound: usize) -> Space {
        Space { values: ValueLattice::PowerZ2, max_base: bound, max_apex: bound }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.values {
            ValueLattice::Two => "2",
            ValueLattice::PowerZ2 => "l(Z2)",
        };
        write!(f, "values {v}, sets <= {}, apexes <= {}", self.max_base, self.max_apex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropReport {
    pub prop: Prop,
    pub space: Space,
    pub instances: u64,
    pub hypotheses_met: u64,
    pub counterexamples: u64,
    /// The first few counterexamples, described.
    pub examples: Vec<String>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }
}

struct Run {
    l: Lattice,
    vals: Vec<Elem>,
    cache: HashMap<(usize, usize), Vec<LRel<Elem>>>,
    report: PropReport,
}

impl Run {
    fn tables(&mut self, nx: usize, ny: usize) -> Vec<LRel<Elem>> {
        let vals = self.vals.clone();
        self.cache.entry((nx, ny)).or_insert_with(|| complete(nx, ny, &vec![None; nx * ny], &vals)).clone()
    }

    fn tables_where(&mut self, nx: usize, ny: usize, keep: impl Fn(&AxiomReport) -> bool) -> Vec<LRel<Elem>> {
        let l = self.l.clone();
        self.tables(nx, ny).into_iter().filter(|t| keep(&axioms(&l, t))).collect()
    }

    fn record(&mut self, hypothesis: bool, conclusion: impl FnOnce() -> Result<(), String>) {
        self.report.instances += 1;
        if !hypothesis {
            return;
        }
        self.report.hypotheses_met += 1;
        if let Err(e) = conclusion() {
            self.report.counterexamples += 1;
            if self.report.examples.len() < 5 {
                self.report.examples.push(e);
            }
        }
    }

    fn show(&self, t: &LRel<Elem>) -> String {
        let rows: Vec<String> = (0..t.nx)
            .map(|x| (0..t.ny).map(|y| self.l.label(*t.at(x, y))).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{}x{}[{}]", t.nx, t.ny, rows.join(" | "))
    }
}

/// All tables agreeing with the forced cells, values drawn from `vals`.
fn complete(nx: usize, ny: usize, forced: &[Option<Elem>], vals: &[Elem]) -> Vec<LRel<Elem>> {
    let free: Vec<usize> = (0..nx * ny).filter(|&i| forced[i].is_none()).collect();
    let base: Vec<Elem> = forced.iter().map(|v| v.unwrap_or(Elem(0))).collect();
    let total = vals.len().pow(free.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut table = base.clone();
            for &i in &free {
                table[i] = vals[code % vals.len()];
                code /= vals.len();
            }
            LRel::new(nx, ny, table)
        })
        .collect()
}

/// Forces `cells[(x, y)] = v`; returns false on a conflicting earlier value.
fn force(cells: &mut [Option<Elem>], ny: usize, x: usize, y: usize, v: Elem) -> bool {
    match cells[x * ny + y] {
        Some(old) => old == v,
        None => {
            cells[x * ny + y] = Some(v);
            true
        }
    }
}

fn sizes4(b: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..(b + 1).pow(4)).map(move |c| [c % (b + 1), c / (b + 1) % (b + 1), c / (b + 1).pow(2) % (b + 1), c / (b + 1).pow(3)])
}

pub fn verify_proposition(prop: Prop, space: Space) -> PropReport {
    let l = space.values.lattice();
    let vals = l.elems().collect();
    let mut run = Run {
        l,
        vals,
        cache: HashMap::new(),
        report: PropReport { prop, space, instances: 0, hypotheses_met: 0, counterexamples: 0, examples: Vec::new() },
    };
    match prop {
        Prop::DiamondTriangle => diamond_triangle(&mut run, space),
        Prop::TriangleDiamond => triangle_diamond(&mut run, space),
        Prop::ProductAxioms => product_axioms(&mut run, space),
        Prop::SpanDiamond => span_props(&mut run, space, prop),
        Prop::MeetFormula => span_props(&mut run, space, prop),
        Prop::TrianglesSpanDiamond => triangles_span_diamond(&mut run, space),
        Prop::RestrictionBijection | Prop::DiamondIffBijection => restriction(&mut run, space, prop),
    }
    run.report
}

fn diamond_triangle(run: &mut Run, space: Space) {
    for [x, y, x2, y2] in sizes4(space.max_base) {
        let (lams, lams2) = (run.tables(x, y), run.tables(x2, y2));
        for f in all_functions(x, x2) {
            for g in all_functions(y, y2) {
                for lam in &lams {
                    for lam2 in &lams2 {
                        let l = run.l.clone();
                        let d1 = check_diamond1(&l, &f, &g, lam, lam2).holds;
                        let d2 = check_diamond2(&l, &f, &g, lam, lam2).holds;
                        let desc = || format!("f={:?} g={:?} lam={} lam'={}", f.map, g.map, run.show(lam), run.show(lam2));
                        let desc = desc();
                        run.record(d1 || d2, || {
                            let t = check_triangle(&l, &f, &g, lam, lam2);
                            if t.holds { Ok(()) } else { Err(format!("{desc}: triangle fails {}", t.witness.unwrap())) }
                        });
                    }
                }
            }
        }
    }
}

fn triangle_diamond(run: &mut Run, space: Space) {
    for [x, y, x2, y2] in sizes4(space.max_base) {
        let (lams, lams2) = (run.tables(x, y), run.tables(x2, y2));
        let l = run.l.clone();
        let ax: Vec<AxiomReport> = lams.iter().map(|t| axioms(&l, t)).collect();
        let ax2: Vec<AxiomReport> = lams2.iter().map(|t| axioms(&l, t)).collect();
        for f in all_functions(x, x2) {
            for g in all_functions(y, y2) {
                for (i, lam) in lams.iter().enumerate() {
                    for (j, lam2) in lams2.iter().enumerate() {
                        let tri = check_triangle(&l, &f, &g, lam, lam2).holds;
                        let desc = format!("f={:?} g={:?} lam={} lam'={}", f.map, g.map, run.show(lam), run.show(lam2));
                        run.record(tri && ax[i].ed() && ax2[j].uv(), || {
                            let d = check_diamond1(&l, &f, &g, lam, lam2);
                            if d.holds { Ok(()) } else { Err(format!("{desc}: diamond1 fails {}", d.witness.unwrap())) }
                        });
                        run.record(tri && ax[i].su() && ax2[j].inj(), || {
                            let d = check_diamond2(&l, &f, &g, lam, lam2);
                            if d.holds { Ok(()) } else { Err(format!("{desc}: diamond2 fails {}", d.witness.unwrap())) }
                        });
                    }
                }
            }
        }
    }
}

fn product_axioms(run: &mut Run, space: Space) {
    for [x, y, x2, y2] in sizes4(space.max_base) {
        let (lams, lams2) = (run.tables(x, y), run.tables(x2, y2));
        let l = run.l.clone();
        let ax: Vec<[bool; 4]> = lams.iter().map(|t| axioms(&l, t).flags()).collect();
        let ax2: Vec<[bool; 4]> = lams2.iter().map(|t| axioms(&l, t).flags()).collect();
        for (i, lam) in lams.iter().enumerate() {
            for (j, lam2) in lams2.iter().enumerate() {
                let p = axioms(&l, &product(&l, lam, lam2)).flags();
                for (k, name) in ["ed", "uv", "su", "in"].iter().enumerate() {
                    let desc = format!("lam={} lam'={}", run.show(lam), run.show(lam2));
                    run.record(ax[i][k] && ax2[j][k], || {
                        if p[k] { Ok(()) } else { Err(format!("{desc}: product loses {name}")) }
                    });
                }
            }
        }
    }
}

struct SpanInstance {
    p: FinFn,
    p2: FinFn,
    q: FinFn,
    q2: FinFn,
}

fn span_instances(space: Space) -> impl Iterator<Item = ([usize; 4], usize, usize, SpanInstance)> {
    let b = space.max_base;
    let a = space.max_apex;
    sizes4(b).flat_map(move |[x, y, x2, y2]| {
        (0..=a).flat_map(move |r| {
            (0..=a).flat_map(move |s| {
                all_functions(r, x).flat_map(move |p| {
                    all_functions(r, x2).flat_map(move |p2| {
                        let p = p.clone();
                        all_functions(s, y).flat_map(move |q| {
                            let (p, p2) = (p.clone(), p2.clone());
                            all_functions(s, y2).map(move |q2| {
                                ([x, y, x2, y2], r, s, SpanInstance { p: p.clone(), p2: p2.clone(), q: q.clone(), q2 })
                            })
                        })
                    })
                })
            })
        })
    })
}

fn span_props(run: &mut Run, space: Space, prop: Prop) {
    let l = run.l.clone();
    for ([x, y, x2, y2], r, s, legs) in span_instances(space) {
        let SpanInstance { p, p2, q, q2 } = &legs;
        let thetas = run.tables(r, s);
        for theta in &thetas {
            match prop {
                Prop::SpanDiamond => {
                    // ◇₂(p,q) pins λ on X × q(S); ◇₁(p',q') pins λ' on p'(R) × Y'
                    let mut cl = vec![None; x * y];
                    let mut ok = true;
                    for j in 0..s {
                        for a in 0..x {
                            let v = l.join_all(p.fiber(a).map(|i| *theta.at(i, j)));
                            ok &= force(&mut cl, y, a, q.apply(j), v);
                        }
                    }
                    let mut cl2 = vec![None; x2 * y2];
                    for i in 0..r {
                        for b2 in 0..y2 {
                            let v = l.join_all(q2.fiber(b2).map(|j| *theta.at(i, j)));
                            ok &= force(&mut cl2, y2, p2.apply(i), b2, v);
                        }
                    }
                    if !ok {
                        run.report.instances += 1;
                        continue;
                    }
                    let rr = Span::new(p.clone(), p2.clone()).induced();
                    let ss = Span::new(q.clone(), q2.clone()).induced();
                    for lam in complete(x, y, &cl, &run.vals) {
                        for lam2 in complete(x2, y2, &cl2, &run.vals) {
                            let hyp = check_diamond1(&l, p2, q2, theta, &lam2).holds
                                && check_diamond2(&l, p, q, theta, &lam).holds;
                            let desc = format!(
                                "p={:?} p'={:?} q={:?} q'={:?} theta={} lam={} lam'={}",
                                p.map, p2.map, q.map, q2.map, run.show(theta), run.show(&lam), run.show(&lam2)
                            );
                            run.record(hyp, || {
                                let d = check_diamond(&l, &rr, &ss, &lam, &lam2);
                                if d.holds { Ok(()) } else { Err(format!("{desc}: diamond fails {}", d.witness.unwrap())) }
                            });
                        }
                    }
                }
                Prop::MeetFormula => {
                    let th = axioms(&l, theta);
                    meet_formula_first(run, [x, y, x2, y2], &legs, theta, th.uv());
                    meet_formula_second(run, [x, y, x2, y2], &legs, theta, th.inj());
                }
                _ => unreachable!(),
            }
        }
    }
}

fn meet_formula_first(run: &mut Run, [x, y, x2, y2]: [usize; 4], legs: &SpanInstance, theta: &LRel<Elem>, uv: bool) {
    let l = run.l.clone();
    let SpanInstance { p, p2, q, q2 } = legs;
    let (r, s) = (theta.nx, theta.ny);
    // ◇₁(p,q) pins λ on p(R) × Y, ◇₁(p',q') pins λ' on p'(R) × Y'
    let mut cl = vec![None; x * y];
    let mut cl2 = vec![None; x2 * y2];
    let mut ok = true;
    for i in 0..r {
        for b in 0..y {
            ok &= force(&mut cl, y, p.apply(i), b, l.join_all(q.fiber(b).map(|j| *theta.at(i, j))));
        }
        for b2 in 0..y2 {
            ok &= force(&mut cl2, y2, p2.apply(i), b2, l.join_all(q2.fiber(b2).map(|j| *theta.at(i, j))));
        }
    }
    if !ok {
        run.report.instances += 1;
        return;
    }
    for lam in complete(x, y, &cl, &run.vals) {
        for lam2 in complete(x2, y2, &cl2, &run.vals) {
            let hyp = uv && check_diamond1(&l, p, q, theta, &lam).holds && check_diamond1(&l, p2, q2, theta, &lam2).holds;
            let desc = format!("first formula, p={:?} p'={:?} q={:?} q'={:?} theta={}", p.map, p2.map, q.map, q2.map, run.show(theta));
            run.record(hyp, || {
                for i in 0..r {
                    for b in 0..y {
                        for b2 in 0..y2 {
                            let lhs = l.meet(*lam.at(p.apply(i), b), *lam2.at(p2.apply(i), b2));
                            let rhs = l.join_all((0..s).filter(|&v| q.apply(v) == b && q2.apply(v) == b2).map(|v| *theta.at(i, v)));
                            if lhs != rhs {
                                return Err(format!("{desc}: at r={i} b={b} b'={b2}"));
                            }
                        }
                    }
                }
                Ok(())
            });
        }
    }
}

fn meet_formula_second(run: &mut Run, [x, y, x2, y2]: [usize; 4], legs: &SpanInstance, theta: &LRel<Elem>, inj: bool) {
    let l = run.l.clone();
    let SpanInstance { p, p2, q, q2 } = legs;
    let (r, s) = (theta.nx, theta.ny);
    // ◇₂(p,q) pins λ on X × q(S), ◇₂(p',q') pins λ' on X' × q'(S)
    let mut cl = vec![None; x * y];
    let mut cl2 = vec![None; x2 * y2];
    let mut ok = true;
    for j in 0..s {
        for a in 0..x {
            ok &= force(&mut cl, y, a, q.apply(j), l.join_all(p.fiber(a).map(|i| *theta.at(i, j))));
        }
        for a2 in 0..x2 {
            ok &= force(&mut cl2, y2, a2, q2.apply(j), l.join_all(p2.fiber(a2).map(|i| *theta.at(i, j))));
        }
    }
    if !ok {
        run.report.instances += 1;
        return;
    }
    for lam in complete(x, y, &cl, &run.vals) {
        for lam2 in complete(x2, y2, &cl2, &run.vals) {
            let hyp = inj && check_diamond2(&l, p, q, theta, &lam).holds && check_diamond2(&l, p2, q2, theta, &lam2).holds;
            let desc = format!("second formula, p={:?} p'={:?} q={:?} q'={:?} theta={}", p.map, p2.map, q.map, q2.map, run.show(theta));
            run.record(hyp, || {
                for j in 0..s {
                    for a in 0..x {
                        for a2 in 0..x2 {
                            let lhs = l.meet(*lam.at(a, q.apply(j)), *lam2.at(a2, q2.apply(j)));
                            let rhs = l.join_all((0..r).filter(|&u| p.apply(u) == a && p2.apply(u) == a2).map(|u| *theta.at(u, j)));
                            if lhs != rhs {
                                return Err(format!("{desc}: at s={j} a={a} a'={a2}"));
                            }
                        }
                    }
                }
                Ok(())
            });
        }
    }
}

fn triangles_span_diamond(run: &mut Run, space: Space) {
    let l = run.l.clone();
    for ([x, y, x2, y2], r, s, legs) in span_instances(space) {
        let SpanInstance { p, p2, q, q2 } = &legs;
        let thetas = run.tables_where(r, s, |a| a.ed() && a.su());
        let lams = run.tables_where(x, y, |a| a.inj());
        let lams2 = run.tables_where(x2, y2, |a| a.uv());
        let rr = Span::new(p.clone(), p2.clone()).induced();
        let ss = Span::new(q.clone(), q2.clone()).induced();
        for theta in &thetas {
            let lams: Vec<&LRel<Elem>> = lams.iter().filter(|lam| check_triangle(&l, p, q, theta, lam).holds).collect();
            let lams2: Vec<&LRel<Elem>> = lams2.iter().filter(|lam| check_triangle(&l, p2, q2, theta, lam).holds).collect();
            for lam in &lams {
                for lam2 in &lams2 {
                    let desc = format!(
                        "p={:?} p'={:?} q={:?} q'={:?} theta={} lam={} lam'={}",
                        p.map, p2.map, q.map, q2.map, run.show(theta), run.show(lam), run.show(lam2)
                    );
                    run.record(true, || {
                        let d = check_diamond(&l, &rr, &ss, lam, lam2);
                        if d.holds { Ok(()) } else { Err(format!("{desc}: diamond fails {}", d.witness.unwrap())) }
                    });
                }
            }
        }
    }
}

fn restriction(run: &mut Run, space: Space, prop: Prop) {
    let l = run.l.clone();
    for [x, y, x2, y2] in sizes4(space.max_base) {
        let lams = run.tables_where(x, y, AxiomReport::is_bijection);
        let lams2 = run.tables_where(x2, y2, AxiomReport::is_bijection);
        for rmask in 0u64..1 << (x * x2) {
            let rr = Relation::from_mask(x, x2, rmask);
            let rspan = Span::of_relation(&rr);
            for smask in 0u64..1 << (y * y2) {
                let ss = Relation::from_mask(y, y2, smask);
                let sspan = Span::of_relation(&ss);
                for lam in &lams {
                    for lam2 in &lams2 {
                        let theta = restrict(&l, lam, lam2, &rr, &ss);
                        let hyp = check_triangle(&l, &rspan.left, &sspan.left, &theta, lam).holds
                            && check_triangle(&l, &rspan.right, &sspan.right, &theta, lam2).holds;
                        let diamond = check_diamond(&l, &rr, &ss, lam, lam2).holds;
                        let bij = axioms(&l, &theta).is_bijection();
                        let desc = format!("R={:?} S={:?} lam={} lam'={}", rr.pairs().collect::<Vec<_>>(), ss.pairs().collect::<Vec<_>>(), run.show(lam), run.show(lam2));
                        match prop {
                            Prop::RestrictionBijection => run.record(hyp && diamond, || {
                                if bij { Ok(()) } else { Err(format!("{desc}: restriction is not an l-bijection")) }
                            }),
                            _ => run.record(hyp, || {
                                if bij == diamond {
                                    Ok(())
                                } else {
                                    Err(format!("{desc}: diamond={diamond} but bijection={bij}"))
                                }
                            }),
                        }
                    }
                }
            }
        }
    }
}
