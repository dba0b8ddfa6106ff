//! The line-oriented instance format: named sets, groups, lattices,
//! actions, presheaves on `0 → 1`, sites, presentations, ℓ-relations,
//! cones and references to derivation files. Every declaration is checked
//! when it is read; later lines may only mention earlier names.

use crate::elevator::{parse_file, ElevatorFile};
use crate::locale::{Presentation, Term};
use crate::locgroup::{is_action, ActionMu, DiscreteGroup};
use crate::lrel::LRel;
use crate::suplat::{Elem, FinFn, Lattice, Limits};
use crate::tannaka::{Model, Object, Site};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: unknown {kind} {name}")]
    Unknown { line: usize, kind: &'static str, name: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Trivial,
    Table { names: Vec<String>, rows: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Power(usize),
    PowerSet(String),
    Chain(usize),
    /// Labels and generating pairs `a < b`; the order is their
    /// reflexive-transitive closure.
    Order { labels: Vec<String>, below: Vec<(String, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiteModel {
    GSets(String),
    Presheaves,
}

/// One line of an instance file, as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Set { name: String, elems: Vec<String> },
    Group { name: String, spec: GroupSpec },
    Lattice { name: String, spec: LatticeSpec },
    /// `images[a][g] = a·g`.
    Action { name: String, group: String, images: Vec<Vec<usize>> },
    Presheaf { name: String, cod: usize, map: Vec<usize> },
    Site { name: String, model: SiteModel },
    Object { site: String, name: String, of: String },
    /// An arrow of a site given by its image under the point.
    Arrow { site: String, name: String, src: String, dst: String, map: Vec<usize> },
    /// `first` then `second` equals `result`.
    Compose { site: String, first: String, second: String, result: String },
    Presentation { name: String, generators: Vec<String> },
    Relation { pres: String, name: String, lhs: String, rhs: String },
    LRel { name: String, lattice: String, nx: usize, ny: usize, labels: Vec<String> },
    Cone { name: String, site: String, lattice: String, parts: Vec<String> },
    Derivations { name: String, path: String },
}

/// A loaded instance file: the declarations and the values they build.
#[derive(Clone, Debug, Default)]
pub struct Instance {
    pub decls: Vec<Decl>,
    pub sets: BTreeMap<String, Vec<String>>,
    pub groups: BTreeMap<String, DiscreteGroup>,
    pub lattices: BTreeMap<String, Lattice>,
    pub actions: BTreeMap<String, ActionMu>,
    pub presheaves: BTreeMap<String, FinFn>,
    pub sites: BTreeMap<String, Site>,
    pub presentations: BTreeMap<String, Presentation>,
    /// Lattice name and table.
    pub lrels: BTreeMap<String, (String, LRel<Elem>)>,
    pub cones: BTreeMap<String, (String, String, Vec<String>)>,
    pub derivations: BTreeMap<String, ElevatorFile>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Instance) -> bool {
        self.decls == other.decls
    }
}

/// Site under construction; finished when the file ends.
struct SiteDraft {
    line: usize,
    model: Model,
    objects: Vec<(String, Object)>,
    arrows: Vec<(usize, String, usize, usize, FinFn)>,
    composes: Vec<(usize, String, String, String)>,
}

struct Loader<'a> {
    inst: Instance,
    drafts: BTreeMap<String, SiteDraft>,
    site_order: Vec<String>,
    base: Option<&'a Path>,
    limits: &'a Limits,
    line: usize,
}

fn malformed(line: usize, msg: impl Into<String>) -> InstanceError {
    InstanceError::Malformed { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, InstanceError> {
    text.split_whitespace().map(|t| t.parse().map_err(|_| malformed(line, format!("expected a number, found {t:?}")))).collect()
}

fn number(line: usize, text: &str) -> Result<usize, InstanceError> {
    text.parse().map_err(|_| malformed(line, format!("expected a number, found {text:?}")))
}

fn split2<'t>(line: usize, text: &'t str, sep: &str, what: &str) -> Result<(&'t str, &'t str), InstanceError> {
    text.split_once(sep).map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| malformed(line, format!("expected {what}")))
}

impl<'a> Loader<'a> {
    fn unknown(&self, kind: &'static str, name: &str) -> InstanceError {
        InstanceError::Unknown { line: self.line, kind, name: name.to_string() }
    }

    fn fresh<T>(&self, map: &BTreeMap<String, T>, name: &str) -> Result<(), InstanceError> {
        if map.contains_key(name) {
            Err(malformed(self.line, format!("{name} is declared twice")))
        } else {
            Ok(())
        }
    }

    fn group(&self, name: &str) -> Result<DiscreteGroup, InstanceError> {
        self.inst.groups.get(name).cloned().ok_or_else(|| self.unknown("group", name))
    }

    fn lattice(&self, name: &str) -> Result<Lattice, InstanceError> {
        self.inst.lattices.get(name).cloned().ok_or_else(|| self.unknown("lattice", name))
    }

    fn declare(&mut self, text: &str) -> Result<Decl, InstanceError> {
        let line = self.line;
        let (head, rest) = text.split_once(char::is_whitespace).map(|(a, b)| (a, b.trim())).unwrap_or((text, ""));
        let words: Vec<&str> = rest.split_whitespace().collect();
        let need = |n: usize, shape: &str| {
            if words.len() < n {
                Err(malformed(line, format!("expected '{head} {shape}'")))
            } else {
                Ok(())
            }
        };
        let decl = match head {
            "set" => {
                need(1, "NAME ELEMENT...")?;
                Decl::Set { name: words[0].into(), elems: words[1..].iter().map(|s| s.to_string()).collect() }
            }
            "group" => {
                need(2, "NAME cyclic N | symmetric N | trivial | table NAMES : ROWS")?;
                let spec = match words[1] {
                    "cyclic" if words.len() == 3 => GroupSpec::Cyclic(number(line, words[2])?),
                    "symmetric" if words.len() == 3 => GroupSpec::Symmetric(number(line, words[2])?),
                    "trivial" if words.len() == 2 => GroupSpec::Trivial,
                    "table" => {
                        let after = rest.split_once("table").map(|x| x.1).unwrap_or("");
                        let (names, rows) = split2(line, after, ":", "'table NAMES : ROW ; ROW ...'")?;
                        GroupSpec::Table {
                            names: names.split_whitespace().map(str::to_string).collect(),
                            rows: rows.split(';').map(|r| numbers(line, r)).collect::<Result<_, _>>()?,
                        }
                    }
                    other => return Err(malformed(line, format!("unknown group kind {other:?}"))),
                };
                Decl::Group { name: words[0].into(), spec }
            }
            "lattice" => {
                need(2, "NAME power N | powerset SET | chain N | order LABELS : a<b ...")?;
                let spec = match words[1] {
                    "power" if words.len() == 3 => LatticeSpec::Power(number(line, words[2])?),
                    "chain" if words.len() == 3 => LatticeSpec::Chain(number(line, words[2])?),
                    "powerset" if words.len() == 3 => LatticeSpec::PowerSet(words[2].into()),
                    "order" => {
                        let after = rest.split_once("order").map(|x| x.1).unwrap_or("");
                        let (labels, pairs) = split2(line, after, ":", "'order LABELS : a<b ...'")?;
                        let below = pairs
                            .split_whitespace()
                            .map(|p| {
                                p.split_once('<')
                                    .map(|(a, b)| (a.to_string(), b.to_string()))
                                    .ok_or_else(|| malformed(line, format!("expected a<b, found {p:?}")))
                            })
                            .collect::<Result<_, _>>()?;
                        LatticeSpec::Order { labels: labels.split_whitespace().map(str::to_string).collect(), below }
                    }
                    other => return Err(malformed(line, format!("unknown lattice kind {other:?}"))),
                };
                Decl::Lattice { name: words[0].into(), spec }
            }
            "action" => {
                let (left, rows) = split2(line, rest, ":", "'action NAME GROUP : IMAGES | IMAGES ...'")?;
                let lw: Vec<&str> = left.split_whitespace().collect();
                let [name, group] = lw[..] else { return Err(malformed(line, "expected 'action NAME GROUP : ...'")) };
                let images = if rows.is_empty() { Vec::new() } else { rows.split('|').map(|r| numbers(line, r)).collect::<Result<_, _>>()? };
                Decl::Action { name: name.into(), group: group.into(), images }
            }
            "presheaf" => {
                let (left, map) = split2(line, rest, ":", "'presheaf NAME N -> M : IMAGES'")?;
                let (name_dom, cod) = split2(line, left, "->", "'presheaf NAME N -> M : IMAGES'")?;
                let nd: Vec<&str> = name_dom.split_whitespace().collect();
                let [name, dom] = nd[..] else { return Err(malformed(line, "expected 'presheaf NAME N -> M'")) };
                let map = numbers(line, map)?;
                if map.len() != number(line, dom)? {
                    return Err(malformed(line, format!("{} images for a set of {dom}", map.len())));
                }
                Decl::Presheaf { name: name.into(), cod: number(line, cod)?, map }
            }
            "site" => {
                need(2, "NAME gsets GROUP | NAME presheaves")?;
                let model = match (words[1], words.get(2)) {
                    ("gsets", Some(g)) if words.len() == 3 => SiteModel::GSets(g.to_string()),
                    ("presheaves", None) => SiteModel::Presheaves,
                    _ => return Err(malformed(line, "expected 'site NAME gsets GROUP' or 'site NAME presheaves'")),
                };
                Decl::Site { name: words[0].into(), model }
            }
            "object" => {
                let [site, name, of] = words[..] else { return Err(malformed(line, "expected 'object SITE NAME ACTION'")) };
                Decl::Object { site: site.into(), name: name.into(), of: of.into() }
            }
            "arrow" => {
                let (left, map) = split2(line, rest, ":", "'arrow SITE NAME SRC DST : IMAGES'")?;
                let lw: Vec<&str> = left.split_whitespace().collect();
                let [site, name, src, dst] = lw[..] else { return Err(malformed(line, "expected 'arrow SITE NAME SRC DST : IMAGES'")) };
                Decl::Arrow { site: site.into(), name: name.into(), src: src.into(), dst: dst.into(), map: numbers(line, map)? }
            }
            "compose" => {
                let [site, first, second, "=", result] = words[..] else {
                    return Err(malformed(line, "expected 'compose SITE F G = H'"));
                };
                Decl::Compose { site: site.into(), first: first.into(), second: second.into(), result: result.into() }
            }
            "presentation" => {
                let (name, gens) = split2(line, rest, ":", "'presentation NAME : GENERATORS'")?;
                Decl::Presentation { name: name.into(), generators: gens.split_whitespace().map(str::to_string).collect() }
            }
            "relation" => {
                let (left, body) = split2(line, rest, ":", "'relation PRES NAME : TERM <= TERM'")?;
                let lw: Vec<&str> = left.split_whitespace().collect();
                let [pres, name] = lw[..] else { return Err(malformed(line, "expected 'relation PRES NAME : ...'")) };
                let (lhs, rhs) = split2(line, body, "<=", "TERM <= TERM")?;
                Decl::Relation { pres: pres.into(), name: name.into(), lhs: lhs.into(), rhs: rhs.into() }
            }
            "lrel" => {
                let (left, labels) = split2(line, rest, ":", "'lrel NAME LATTICE NX NY : LABELS'")?;
                let lw: Vec<&str> = left.split_whitespace().collect();
                let [name, lattice, nx, ny] = lw[..] else { return Err(malformed(line, "expected 'lrel NAME LATTICE NX NY : ...'")) };
                Decl::LRel {
                    name: name.into(),
                    lattice: lattice.into(),
                    nx: number(line, nx)?,
                    ny: number(line, ny)?,
                    labels: labels.split_whitespace().map(str::to_string).collect(),
                }
            }
            "cone" => {
                let (left, parts) = split2(line, rest, ":", "'cone NAME SITE LATTICE : LRELS'")?;
                let lw: Vec<&str> = left.split_whitespace().collect();
                let [name, site, lattice] = lw[..] else { return Err(malformed(line, "expected 'cone NAME SITE LATTICE : ...'")) };
                Decl::Cone {
                    name: name.into(),
                    site: site.into(),
                    lattice: lattice.into(),
                    parts: parts.split_whitespace().map(str::to_string).collect(),
                }
            }
            "derivations" => {
                let [name, path] = words[..] else { return Err(malformed(line, "expected 'derivations NAME PATH'")) };
                Decl::Derivations { name: name.into(), path: path.into() }
            }
            other => return Err(malformed(line, format!("unknown declaration {other:?}"))),
        };
        self.build(&decl)?;
        Ok(decl)
    }

    fn build(&mut self, decl: &Decl) -> Result<(), InstanceError> {
        let line = self.line;
        match decl {
            Decl::Set { name, elems } => {
                self.fresh(&self.inst.sets, name)?;
                let mut sorted = elems.clone();
                sorted.sort();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(malformed(line, format!("set {name} repeats an element")));
                }
                self.inst.sets.insert(name.clone(), elems.clone());
            }
            Decl::Group { name, spec } => {
                self.fresh(&self.inst.groups, name)?;
                let g = match spec {
                    GroupSpec::Cyclic(n) if *n >= 1 => DiscreteGroup::cyclic(*n),
                    GroupSpec::Symmetric(n) if *n <= 4 => DiscreteGroup::symmetric(*n),
                    GroupSpec::Trivial => DiscreteGroup::trivial(),
                    GroupSpec::Table { names, rows } => {
                        DiscreteGroup::new(names.clone(), rows.clone()).map_err(|e| malformed(line, e.to_string()))?
                    }
                    _ => return Err(malformed(line, "group size out of range")),
                };
                self.inst.groups.insert(name.clone(), g);
            }
            Decl::Lattice { name, spec } => {
                self.fresh(&self.inst.lattices, name)?;
                let l = match spec {
                    LatticeSpec::Power(n) if *n <= 16 => Lattice::power(*n),
                    LatticeSpec::Power(n) => return Err(malformed(line, format!("power lattice on {n} points is too large"))),
                    LatticeSpec::Chain(n) if *n >= 1 => Lattice::chain(*n),
                    LatticeSpec::Chain(_) => return Err(malformed(line, "a chain has at least one element")),
                    LatticeSpec::PowerSet(set) => {
                        let elems = self.inst.sets.get(set).ok_or_else(|| self.unknown("set", set))?;
                        Lattice::power_set(elems.clone(), self.limits).map_err(|e| malformed(line, e.to_string()))?
                    }
                    LatticeSpec::Order { labels, below } => {
                        let n = labels.len();
                        let index = |s: &String| labels.iter().position(|l| l == s);
                        let mut reach = vec![vec![false; n]; n];
                        for (i, row) in reach.iter_mut().enumerate() {
                            row[i] = true;
                        }
                        for (a, b) in below {
                            let (Some(i), Some(j)) = (index(a), index(b)) else {
                                return Err(self.unknown("label", if index(a).is_none() { a } else { b }));
                            };
                            reach[i][j] = true;
                        }
                        for k in 0..n {
                            for i in 0..n {
                                for j in 0..n {
                                    if reach[i][k] && reach[k][j] {
                                        reach[i][j] = true;
                                    }
                                }
                            }
                        }
                        Lattice::from_order(labels.clone(), |a, b| reach[a][b], self.limits)
                            .map_err(|e| malformed(line, format!("lattice {name}: {e}")))?
                    }
                };
                self.inst.lattices.insert(name.clone(), l);
            }
            Decl::Action { name, group, images } => {
                self.fresh(&self.inst.actions, name)?;
                let g = self.group(group)?;
                let n = images.len();
                if images.iter().any(|r| r.len() != g.order() || r.iter().any(|&b| b >= n)) {
                    return Err(malformed(line, format!("action {name} needs {} images in 0..{n} per point", g.order())));
                }
                let mu = ActionMu::from_classical(&g, images);
                if !is_action(&g, &mu.table).is_action() {
                    return Err(malformed(line, format!("{name} is not a right action of {group}")));
                }
                self.inst.actions.insert(name.clone(), mu);
            }
            Decl::Presheaf { name, cod, map } => {
                self.fresh(&self.inst.presheaves, name)?;
                if map.iter().any(|&y| y >= *cod) {
                    return Err(malformed(line, format!("presheaf {name} maps outside 0..{cod}")));
                }
                self.inst.presheaves.insert(name.clone(), FinFn::new(*cod, map.clone()));
            }
            Decl::Site { name, model } => {
                if self.drafts.contains_key(name) {
                    return Err(malformed(line, format!("{name} is declared twice")));
                }
                let model = match model {
                    SiteModel::GSets(g) => Model::GSets(self.group(g)?),
                    SiteModel::Presheaves => Model::ArrowPresheaves,
                };
                self.site_order.push(name.clone());
                self.drafts.insert(name.clone(), SiteDraft { line, model, objects: Vec::new(), arrows: Vec::new(), composes: Vec::new() });
            }
            Decl::Object { site, name, of } => {
                let obj = match &self.drafts.get(site).ok_or_else(|| self.unknown("site", site))?.model {
                    Model::GSets(g) => {
                        let mu = self.inst.actions.get(of).ok_or_else(|| self.unknown("action", of))?;
                        if &mu.group != g {
                            return Err(malformed(line, format!("{of} is an action of another group")));
                        }
                        Object::GSet(mu.clone())
                    }
                    Model::ArrowPresheaves => Object::Arrow(self.inst.presheaves.get(of).ok_or_else(|| self.unknown("presheaf", of))?.clone()),
                };
                let d = self.drafts.get_mut(site).expect("checked");
                if d.objects.iter().any(|(n, _)| n == name) {
                    return Err(malformed(line, format!("object {name} is declared twice")));
                }
                d.objects.push((name.clone(), obj));
            }
            Decl::Arrow { site, name, src, dst, map } => {
                let d = self.drafts.get(site).ok_or_else(|| self.unknown("site", site))?;
                let find = |o: &String| d.objects.iter().position(|(n, _)| n == o);
                let s = find(src).ok_or_else(|| self.unknown("object", src))?;
                let t = find(dst).ok_or_else(|| self.unknown("object", dst))?;
                let (ns, nt) = (d.objects[s].1.fiber(), d.objects[t].1.fiber());
                if map.len() != ns || map.iter().any(|&y| y >= nt) {
                    return Err(malformed(line, format!("arrow {name} needs {ns} images in 0..{nt}")));
                }
                let f = FinFn::new(nt, map.clone());
                if !d.objects[s].1.hom(&d.objects[t].1).contains(&f) {
                    return Err(malformed(line, format!("arrow {name} is not a morphism {src} -> {dst}")));
                }
                if d.arrows.iter().any(|a| &a.1 == name) {
                    return Err(malformed(line, format!("arrow {name} is declared twice")));
                }
                self.drafts.get_mut(site).expect("checked").arrows.push((line, name.clone(), s, t, f));
            }
            Decl::Compose { site, first, second, result } => {
                let d = self.drafts.get_mut(site).ok_or_else(|| InstanceError::Unknown { line, kind: "site", name: site.clone() })?;
                d.composes.push((line, first.clone(), second.clone(), result.clone()));
            }
            Decl::Presentation { name, generators } => {
                self.fresh(&self.inst.presentations, name)?;
                self.inst.presentations.insert(name.clone(), Presentation::new(generators.clone()));
            }
            Decl::Relation { pres, name, lhs, rhs } => {
                let p = self.inst.presentations.get(pres).ok_or_else(|| self.unknown("presentation", pres))?;
                let parse = |t: &str| Term::parse(t, &p.generators).map_err(|e| malformed(line, e.to_string()));
                let (l, r) = (parse(lhs)?, parse(rhs)?);
                self.inst.presentations.get_mut(pres).expect("checked").leq(name.clone(), l, r);
            }
            Decl::LRel { name, lattice, nx, ny, labels } => {
                self.fresh(&self.inst.lrels, name)?;
                let l = self.lattice(lattice)?;
                if labels.len() != nx * ny {
                    return Err(malformed(line, format!("lrel {name} needs {} entries, found {}", nx * ny, labels.len())));
                }
                let table = labels
                    .iter()
                    .map(|s| l.lookup(s).ok_or_else(|| self.unknown("element", s)))
                    .collect::<Result<Vec<_>, _>>()?;
                self.inst.lrels.insert(name.clone(), (lattice.clone(), LRel::new(*nx, *ny, table)));
            }
            Decl::Cone { name, site, lattice, parts } => {
                self.fresh(&self.inst.cones, name)?;
                let d = self.drafts.get(site).ok_or_else(|| self.unknown("site", site))?;
                self.lattice(lattice)?;
                if parts.len() != d.objects.len() {
                    return Err(malformed(line, format!("cone {name} needs one lrel per object of {site}")));
                }
                for (p, (oname, obj)) in parts.iter().zip(&d.objects) {
                    let (ln, r) = self.inst.lrels.get(p).ok_or_else(|| self.unknown("lrel", p))?;
                    let n = obj.fiber();
                    if ln != lattice || r.nx != n || r.ny != n {
                        return Err(malformed(line, format!("{p} is not a {n} x {n} table into {lattice} for {oname}")));
                    }
                }
                self.inst.cones.insert(name.clone(), (site.clone(), lattice.clone(), parts.clone()));
            }
            Decl::Derivations { name, path } => {
                self.fresh(&self.inst.derivations, name)?;
                let full: PathBuf = match self.base {
                    Some(b) => b.join(path),
                    None => PathBuf::from(path),
                };
                let text = std::fs::read_to_string(&full).map_err(|e| malformed(line, format!("{}: {e}", full.display())))?;
                let f = parse_file(&text).map_err(|e| malformed(line, format!("{path}: {e}")))?;
                self.inst.derivations.insert(name.clone(), f);
            }
        }
        Ok(())
    }

    /// Builds each site and checks the declared arrows against it.
    fn finish_sites(&mut self) -> Result<(), InstanceError> {
        for name in std::mem::take(&mut self.site_order) {
            let d = self.drafts.remove(&name).expect("drafted");
            if d.objects.is_empty() {
                return Err(malformed(d.line, format!("site {name} has no objects")));
            }
            let site = Site::new(name.clone(), d.model, d.objects.clone());
            let arrow = |n: &String, line: usize| {
                d.arrows.iter().find(|a| &a.1 == n).ok_or(InstanceError::Unknown { line, kind: "arrow", name: n.clone() })
            };
            for (line, f, g, h) in &d.composes {
                let (f, g, h) = (arrow(f, *line)?, arrow(g, *line)?, arrow(h, *line)?);
                if f.3 != g.2 || h.2 != f.2 || h.3 != g.3 {
                    return Err(malformed(*line, format!("{} ; {} = {} does not typecheck", f.1, g.1, h.1)));
                }
                let comp = f.4.then(&g.4);
                if let Some(a) = (0..comp.dom()).find(|&a| comp.apply(a) != h.4.apply(a)) {
                    return Err(malformed(
                        *line,
                        format!(
                            "not functorial: {} ; {} sends {a} to {}, {} sends it to {}",
                            f.1,
                            g.1,
                            comp.apply(a),
                            h.1,
                            h.4.apply(a)
                        ),
                    ));
                }
            }
            if !d.arrows.is_empty() {
                for s in 0..site.objects.len() {
                    for t in 0..site.objects.len() {
                        let mut want: Vec<&FinFn> = site.arrows.iter().filter(|a| a.src == s && a.dst == t).map(|a| &a.map).collect();
                        let mut have: Vec<&FinFn> = d.arrows.iter().filter(|a| a.2 == s && a.3 == t).map(|a| &a.4).collect();
                        want.sort_by_key(|f| f.map.clone());
                        have.sort_by_key(|f| f.map.clone());
                        if want != have {
                            return Err(malformed(
                                d.line,
                                format!(
                                    "site {name} is not full: {} arrows {} -> {} declared, {} exist",
                                    have.len(),
                                    site.names[s],
                                    site.names[t],
                                    want.len()
                                ),
                            ));
                        }
                    }
                }
            }
            self.inst.sites.insert(name, site);
        }
        Ok(())
    }
}

/// Parses an instance; `base` resolves relative derivation paths.
pub fn parse_instance(text: &str, base: Option<&Path>, limits: &Limits) -> Result<Instance, InstanceError> {
    let mut loader = Loader { inst: Instance::default(), drafts: BTreeMap::new(), site_order: Vec::new(), base, limits, line: 0 };
    for (i, raw) in text.lines().enumerate() {
        loader.line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let decl = loader.declare(content)?;
        loader.inst.decls.push(decl);
    }
    loader.finish_sites()?;
    Ok(loader.inst)
}

pub fn load(path: &Path, limits: &Limits) -> Result<Instance, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|e| InstanceError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_instance(&text, path.parent(), limits)
}

fn join_nums(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes the declarations back in order; comments are not kept.
pub fn dump(inst: &Instance) -> String {
    let mut out = String::new();
    for d in &inst.decls {
        let _ = match d {
            Decl::Set { name, elems } => writeln!(out, "set {name} {}", elems.join(" ")),
            Decl::Group { name, spec } => match spec {
                GroupSpec::Cyclic(n) => writeln!(out, "group {name} cyclic {n}"),
                GroupSpec::Symmetric(n) => writeln!(out, "group {name} symmetric {n}"),
                GroupSpec::Trivial => writeln!(out, "group {name} trivial"),
                GroupSpec::Table { names, rows } => {
                    let rows: Vec<String> = rows.iter().map(|r| join_nums(r)).collect();
                    writeln!(out, "group {name} table {} : {}", names.join(" "), rows.join(" ; "))
                }
            },
            Decl::Lattice { name, spec } => match spec {
                LatticeSpec::Power(n) => writeln!(out, "lattice {name} power {n}"),
                LatticeSpec::PowerSet(s) => writeln!(out, "lattice {name} powerset {s}"),
                LatticeSpec::Chain(n) => writeln!(out, "lattice {name} chain {n}"),
                LatticeSpec::Order { labels, below } => {
                    let pairs: Vec<String> = below.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                    writeln!(out, "lattice {name} order {} : {}", labels.join(" "), pairs.join(" "))
                }
            },
            Decl::Action { name, group, images } => {
                let rows: Vec<String> = images.iter().map(|r| join_nums(r)).collect();
                writeln!(out, "action {name} {group} : {}", rows.join(" | "))
            }
            Decl::Presheaf { name, cod, map } => writeln!(out, "presheaf {name} {} -> {cod} : {}", map.len(), join_nums(map)),
            Decl::Site { name, model } => match model {
                SiteModel::GSets(g) => writeln!(out, "site {name} gsets {g}"),
                SiteModel::Presheaves => writeln!(out, "site {name} presheaves"),
            },
            Decl::Object { site, name, of } => writeln!(out, "object {site} {name} {of}"),
            Decl::Arrow { site, name, src, dst, map } => writeln!(out, "arrow {site} {name} {src} {dst} : {}", join_nums(map)),
            Decl::Compose { site, first, second, result } => writeln!(out, "compose {site} {first} {second} = {result}"),
            Decl::Presentation { name, generators } => writeln!(out, "presentation {name} : {}", generators.join(" ")),
            Decl::Relation { pres, name, lhs, rhs } => writeln!(out, "relation {pres} {name} : {lhs} <= {rhs}"),
            Decl::LRel { name, lattice, nx, ny, labels } => writeln!(out, "lrel {name} {lattice} {nx} {ny} : {}", labels.join(" ")),
            Decl::Cone { name, site, lattice, parts } => writeln!(out, "cone {name} {site} {lattice} : {}", parts.join(" ")),
            Decl::Derivations { name, path } => writeln!(out, "derivations {name} {path}"),
        };
    }
    out
}

/// Site files shipped with the crate, by file name.
pub const BUNDLED_SITES: [(&str, &str); 4] = [
    ("z2.site", include_str!("../data/sites/z2.site")),
    ("z3.site", include_str!("../data/sites/z3.site")),
    ("terminal.site", include_str!("../data/sites/terminal.site")),
    ("arrow.site", include_str!("../data/sites/arrow.site")),
];

/// The single site declared by a bundled site file, looked up by file name
/// with or without the `.site` suffix.
pub fn bundled_site(name: &str) -> Option<Site> {
    let file = if name.ends_with(".site") { name.to_string() } else { format!("{name}.site") };
    let (_, text) = BUNDLED_SITES.iter().find(|(n, _)| *n == file)?;
    let inst = parse_instance(text, None, &Limits::default()).expect("bundled sites load");
    inst.sites.into_values().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_str(text: &str) -> Result<Instance, InstanceError> {
        parse_instance(text, None, &Limits::default())
    }

    #[test]
    fn bundled_sites_are_the_built_in_ones() {
        for (name, site) in [("z2", Site::z2()), ("z3", Site::z3()), ("terminal", Site::terminal()), ("arrow", Site::arrow())] {
            assert_eq!(bundled_site(name).unwrap(), site, "{name}");
        }
    }

    #[test]
    fn round_trip_of_bundled_files() {
        for (name, text) in BUNDLED_SITES {
            let a = load_str(text).unwrap();
            let b = load_str(&dump(&a)).unwrap();
            assert_eq!(a, b, "{name}");
            assert_eq!(a.sites, b.sites);
        }
    }

    #[test]
    fn functoriality_violation_is_refused_with_witness() {
        let (_, z2) = BUNDLED_SITES[0];
        let bad = z2.replace("compose z2 swap swap = idZ2", "compose z2 swap swap = swap");
        let err = load_str(&bad).unwrap_err();
        let InstanceError::Malformed { msg, .. } = &err else { panic!("{err:?}") };
        assert!(msg.contains("not functorial: swap ; swap sends 0 to 0, swap sends it to 1"), "{msg}");
    }

    #[test]
    fn missing_join_is_named() {
        let err = load_str("lattice V order bot a b : bot<a bot<b").unwrap_err();
        assert_eq!(err, InstanceError::Malformed { line: 1, msg: "lattice V: subset {a, b} has no least upper bound".into() });
        let ok = load_str("lattice D order bot a b top : bot<a bot<b a<top b<top").unwrap();
        assert_eq!(ok.lattices["D"].size(), 4);
    }

    #[test]
    fn references_must_be_declared_first() {
        let err = load_str("action X Z2 : 0 1 | 1 0\ngroup Z2 cyclic 2").unwrap_err();
        assert_eq!(err, InstanceError::Unknown { line: 1, kind: "group", name: "Z2".into() });
        let err = load_str("group Z2 cyclic 2\naction X Z2 : 0 0 | 0 1").unwrap_err();
        assert!(matches!(err, InstanceError::Malformed { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn incomplete_arrow_lists_are_refused() {
        let (_, z2) = BUNDLED_SITES[0];
        let bad: String = z2.lines().filter(|l| !l.contains("swap")).map(|l| format!("{l}\n")).collect();
        let err = load_str(&bad).unwrap_err();
        assert!(err.to_string().contains("not full"), "{err}");
    }

    #[test]
    fn every_kind_of_declaration_round_trips() {
        let text = "\
set X a b c
group K table e a b c : 0 1 2 3 ; 1 0 3 2 ; 2 3 0 1 ; 3 2 1 0
group S symmetric 2
lattice L powerset X
lattice C chain 3
lattice D order bot a b top : bot<a bot<b a<top b<top
action reg S : 0 1 | 1 0
presheaf p 2 -> 1 : 0 0
presentation P : x y
relation P r : (and x y) <= 0
lrel lam C 2 2 : 2 0 0 2
site s gsets S
object s R reg
cone c s C : lam
";
        let a = load_str(text).unwrap();
        assert_eq!(a.decls.len(), 14);
        assert_eq!(a.lattices["L"].size(), 8);
        assert_eq!(a.presentations["P"].relations.len(), 1);
        assert_eq!(dump(&a), text);
        assert_eq!(load_str(&dump(&a)).unwrap(), a);
    }
}
