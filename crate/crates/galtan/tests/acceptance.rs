//! Acceptance suite: one line per criterion with its verdict, detail and
//! wall time against the time limit. Exits nonzero if any criterion fails.

use galtan::comodule::iso_cmd_rel;
use galtan::elevator::{check_derivation, decide_symmetry_equality, parse_file, Cell, Row, Signature, Term, Word, BUNDLED};
use galtan::locale::free_frame;
use galtan::locgroup::{aut_hopf, permutation_point, DiscreteGroup};
use galtan::lrel::{negative_corpus, verify_proposition, Prop, Space};
use galtan::suplat::{all_functions, tensor, Elem, Lattice, Limits};
use galtan::tannaka::{adjunction, check_iso, lifting_check, AutF, Base, EndHopf, EndT, Site};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn limits() -> Limits {
    Limits::default()
}

/// Criterion 1. The bi-ideal of `R ⊆ X × Y` is `{(A, B) : A × B ⊆ R}`; its
/// column at `B` is the largest such `A`. Every element of the computed
/// tensor must be one of these, all of them must occur, and pure tensors
/// must be the rectangles.
fn tensor_products() -> Outcome {
    let mut checked = 0;
    for nx in 0..=3usize {
        for ny in 0..=3usize {
            let tl = tensor(&Lattice::power(nx), &Lattice::power(ny), &limits()).map_err(|e| e.to_string())?;
            let column = |r: u32, b: usize| -> u32 {
                (0..nx).filter(|&x| (0..ny).all(|y| b >> y & 1 == 0 || r >> (x * ny + y) & 1 == 1)).fold(0, |m, x| m | 1 << x)
            };
            let ideal_of = |r: u32| -> Vec<Elem> { (0..1usize << ny).map(|b| Elem(column(r, b))).collect() };
            let expected: BTreeSet<Vec<Elem>> = (0..1u32 << (nx * ny)).map(ideal_of).collect();
            let actual: BTreeSet<Vec<Elem>> = tl.lattice().elems().map(|e| tl.ideal(e).0.clone()).collect();
            ensure(expected.len() == 1 << (nx * ny), || format!("{nx}x{ny}: oracle produced duplicates"))?;
            ensure(expected == actual, || format!("{nx}x{ny}: elements differ from the rectangles"))?;
            for a in 0..1u32 << nx {
                for b in 0..1u32 << ny {
                    let rect = (0..nx * ny).filter(|i| a >> (i / ny) & 1 == 1 && b >> (i % ny) & 1 == 1).fold(0, |m, i| m | 1 << i);
                    let pure = tl.ideal(tl.pure(Elem(a), Elem(b))).0.clone();
                    ensure(pure == ideal_of(rect), || format!("{nx}x{ny}: {a:#b} (x) {b:#b} is not the rectangle"))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs of sizes, elements and pure tensors match"))
}

/// Criterion 2. Up-sets of the power set of `n`, by brute force.
fn up_sets(n: usize) -> usize {
    let points = 1usize << n;
    (0..1u64 << points)
        .filter(|&set| (0..points).all(|s| set >> s & 1 == 0 || (0..n).all(|i| set >> (s | 1 << i) & 1 == 1)))
        .count()
}

fn free_frames() -> Outcome {
    let mut sizes = Vec::new();
    for n in 0..=4 {
        let size = free_frame(n, &limits()).and_then(|f| f.materialize()).map_err(|e| e.to_string())?.lattice.size();
        let oracle = up_sets(n);
        ensure(size == oracle, || format!("n = {n}: {size} elements, oracle {oracle}"))?;
        sizes.push(size);
    }
    ensure(sizes == [2, 3, 6, 20, 168], || format!("sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

/// Criterion 3.
fn aut_two() -> Outcome {
    let h = aut_hopf(2, &limits()).map_err(|e| e.to_string())?;
    let size = h.frame().materialize().map_err(|e| e.to_string())?.lattice.size();
    ensure(size == 4, || format!("{size} elements"))?;
    let s2 = DiscreteGroup::symmetric(2);
    let perms = [vec![0, 1], vec![1, 0]];
    ensure(s2.names() == ["01", "10"], || format!("unexpected S2 naming {:?}", s2.names()))?;
    let iso = h.iso_to_group(&s2, &|g| permutation_point(&perms[g])).map_err(|e| e.to_string())?;
    ensure(iso.frame_iso && iso.w && iso.e && iso.iota, || format!("{iso:?}"))?;
    Ok("4 elements; frame, w, e, iota agree with l(S2)".into())
}

/// Criterion 4.
fn propositions() -> Outcome {
    let mut instances = 0;
    for prop in Prop::ALL {
        for space in [Space::two(2), Space::power_z2(2)] {
            let r = verify_proposition(prop, space);
            ensure(r.counterexamples == 0, || format!("{} over {space}: {:?}", prop.name(), r.examples.first()))?;
            instances += r.instances;
        }
    }
    let corpus = negative_corpus();
    let missed: Vec<_> = corpus.iter().filter(|c| !c.detected()).map(|c| c.name.clone()).collect();
    ensure(missed.is_empty(), || format!("planted cases missed: {missed:?}"))?;
    Ok(format!("{} propositions, {instances} instances, {} planted cases detected", Prop::ALL.len(), corpus.len()))
}

/// Criterion 5. Z2-actions on `X` are involutions of `X`.
fn involutions(n: usize) -> usize {
    all_functions(n, n).filter(|f| f.is_bijective() && (0..n).all(|x| f.apply(f.apply(x)) == x)).count()
}

fn comodules() -> Outcome {
    let r = iso_cmd_rel(&DiscreteGroup::cyclic(2), 3, &limits()).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{r:?}"))?;
    let mut counts = Vec::new();
    for n in 1..=3 {
        let &(_, co, act) = r.objects.iter().find(|o| o.0 == n).ok_or(format!("no entry for {n}"))?;
        ensure(co == involutions(n) && act == co, || format!("|X| = {n}: {co} coactions, {act} actions"))?;
        counts.push(co);
    }
    ensure(counts == [1, 2, 4], || format!("{counts:?}"))?;
    Ok(format!("counts {counts:?}, {} hom pairs agree, triangle commutes", r.hom_pairs))
}

/// Criterion 6.
fn autf_vs_endt() -> Outcome {
    let z2 = check_iso(&Site::z2(), 2, &limits()).map_err(|e| e.to_string())?;
    ensure(z2.autf_size == Some(4) && z2.endt_size == 4, || format!("sizes {:?} / {}", z2.autf_size, z2.endt_size))?;
    ensure(
        z2.bijective == Some(true) && z2.group_iso == Some(true) && z2.w == Some(true) && z2.e == Some(true) && z2.iota == Some(true),
        || format!("{z2:?}"),
    )?;
    let z3 = check_iso(&Site::z3(), 2, &limits()).map_err(|e| e.to_string())?;
    ensure(z3.order_agrees && z3.frame_map, || format!("{z3:?}"))?;
    Ok(format!("z2: 4 = 4 with w, e, iota; z3: {} meet pairs agree", z3.meet_pairs))
}

/// Criterion 7.
fn key_lemma() -> Outcome {
    let mut parts = Vec::new();
    for site in [Site::z2(), Site::z3()] {
        let k = AutF::build(&site, &limits()).map_err(|e| e.to_string())?.key_lemma();
        ensure(k.holds(), || format!("{}: {:?}", site.name, k.witness))?;
        parts.push(format!("{}: {} generators nonzero, {} pairs", site.name, k.generators, k.comparable));
    }
    Ok(parts.join("; "))
}

/// Criterion 8.
fn lifting() -> Outcome {
    let z2 = lifting_check(&Site::z2(), 3, &limits()).map_err(|e| e.to_string())?;
    ensure(z2.galois.is_equivalence() && z2.tannaka.is_equivalence(), || format!("{z2:?}"))?;
    let arrow = lifting_check(&Site::arrow(), 3, &limits()).map_err(|e| e.to_string())?;
    let failed = [&arrow.galois, &arrow.tannaka]
        .into_iter()
        .flat_map(|v| [&v.faithful, &v.full, &v.essentially_surjective])
        .find(|v| !v.holds)
        .ok_or("the arrow site lifts to an equivalence")?;
    let witness = failed.witness.clone().ok_or("failure without a witness")?;
    Ok(format!("z2 at bound 3: {} objects, both equivalences; arrow at bound 3 fails: {witness}", z2.objects))
}

/// Criterion 9.
fn adjunction_and_composites() -> Outcome {
    let bases = [
        ("discrete 1", Base::discrete(1)),
        ("discrete 2", Base::discrete(2)),
        ("terminal", Base::from_site(&Site::terminal())),
        ("z2", Base::from_site(&Site::z2())),
        ("arrow", Base::from_site(&Site::arrow())),
    ];
    let mut cases = 0;
    for v in [Lattice::two(), DiscreteGroup::cyclic(2).lattice()] {
        for (name, base) in &bases {
            let r = adjunction(base, &v, &limits()).map_err(|e| e.to_string())?;
            ensure(r.holds() && r.homs == r.nats, || format!("{name}, V of size {}: {r:?}", v.size()))?;
            cases += 1;
        }
    }
    for site in Site::bundled() {
        let e = EndT::build(&site).map_err(|e| e.to_string())?;
        let r = EndHopf::new(&e, &limits()).and_then(|h| h.check()).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{}: {r:?}", site.name))?;
    }
    Ok(format!("{cases} adjunction counts equal; composites agree on {} sites", Site::bundled().len()))
}

/// Criterion 10 oracle: the class of a word in the adjacent transpositions
/// under cancellation, far commutation and the braid relation, explored
/// without ever lengthening the word. Its shortest, then smallest, member
/// is a reduced word determined by the permutation alone.
fn canonical(word: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a == b {
                next.push([&w[..i], &w[i + 2..]].concat());
            } else if a.abs_diff(b) >= 2 {
                let mut v = w.clone();
                v.swap(i, i + 1);
                next.push(v);
            }
            if i + 2 < w.len() && a == w[i + 2] && a.abs_diff(b) == 1 {
                let mut v = w.clone();
                v[i] = b;
                v[i + 1] = a;
                v[i + 2] = b;
                next.push(v);
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b))).expect("nonempty")
}

fn words(wires: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..wires.saturating_sub(1) {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn crossing_term(dom: &[&str], word: &[usize]) -> Term {
    let mut cur: Vec<String> = dom.iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    for &i in word {
        rows.push(Row { col: i, cell: Cell::Sym(cur[i].clone(), cur[i + 1].clone()) });
        cur.swap(i, i + 1);
    }
    Term { dom: Word::new(dom.iter().copied()), rows }
}

fn coherence_and_derivations() -> Outcome {
    let mut sig = Signature::new();
    for o in ["A", "B", "C", "D"] {
        sig.add_object(o).map_err(|e| e.to_string())?;
    }
    let doms: [&[&str]; 11] = [
        &["A"],
        &["A", "B"],
        &["A", "A"],
        &["A", "B", "C"],
        &["A", "A", "B"],
        &["A", "B", "A"],
        &["A", "A", "A"],
        &["A", "B", "C", "D"],
        &["A", "A", "B", "B"],
        &["A", "B", "A", "B"],
        &["A", "A", "A", "A"],
    ];
    let mut pairs = 0u64;
    let mut classes = HashMap::new();
    for dom in doms {
        let ws = words(dom.len(), 6);
        let canon: Vec<Vec<usize>> = ws.iter().map(|w| classes.entry(w.clone()).or_insert_with(|| canonical(w)).clone()).collect();
        let terms: Vec<Term> = ws.iter().map(|w| crossing_term(dom, w)).collect();
        for i in 0..terms.len() {
            for j in i..terms.len() {
                let decided = decide_symmetry_equality(&terms[i], &terms[j], &sig).map_err(|e| e.to_string())?;
                ensure(decided == (canon[i] == canon[j]), || format!("{dom:?}: words {:?} and {:?}", ws[i], ws[j]))?;
                pairs += 1;
            }
        }
    }
    let mut steps = 0;
    for (name, text) in BUNDLED {
        let f = parse_file(text).map_err(|e| format!("{name}: {e}"))?;
        let model = f.model.as_ref().ok_or(format!("{name}: no model"))?;
        for d in &f.derivations {
            let v = check_derivation(&f.signature, d);
            ensure(v.accepted(), || format!("{name}: {:?}", v.failure))?;
            let s = model.check_derivation(&f.signature, d).map_err(|e| e.to_string())?;
            ensure(s.holds && s.checked == d.steps.len(), || format!("{name}: {:?}", s.witness))?;
            steps += d.steps.len();
        }
    }
    Ok(format!("{pairs} term pairs agree with the oracle; {} derivations replay, {steps} steps sound", BUNDLED.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("tensor of power sets", 10, tensor_products),
        ("free frame sizes", 30, free_frames),
        ("automorphisms of {0,1}", 60, aut_two),
        ("proposition suite", 120, propositions),
        ("comodules and relations", 120, comodules),
        ("Aut(F) and End^v(T)", 300, autf_vs_endt),
        ("key lemma", 300, key_lemma),
        ("lifting", 300, lifting),
        ("adjunction and composites", 300, adjunction_and_composites),
        ("coherence and derivations", 60, coherence_and_derivations),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let time = start.elapsed();
        let in_time = time <= Duration::from_secs(limit);
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {verdict} {name}: {detail} ({:.2} s, limit {limit} s)", i + 1, time.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
