//! Oriented (virtual) link diagrams at the semi-arc level and their biquandle colorings.
//!
//! A crossing joins four semi-arcs. Its two input semi-arcs determine the two
//! outputs: at a positive crossing the inputs sit on the left of the over
//! strand's direction as (over-in, under-out); at a negative crossing they are
//! (under-in, over-out). Writing `ua, oa` for the input under/over labels and
//! `ub, ob` for the other two, both signs obey
//!
//! ```text
//! ub = ua ▷̲ oa        ob = oa ▷̄ ua
//! ```
//!
//! Virtual crossings are not stored; semi-arcs pass through them unchanged.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::algebra::Biquandle;
use crate::error::{Error, Result};

/// A coloring: one biquandle element (0-indexed) per semi-arc.
pub type Coloring = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub oi: usize,
    pub oo: usize,
    pub ui: usize,
    pub uo: usize,
    /// +1 or -1 by the right-hand rule.
    pub sign: i8,
}

impl Crossing {
    pub fn new(oi: usize, oo: usize, ui: usize, uo: usize, sign: i8) -> Self {
        Crossing {
            oi,
            oo,
            ui,
            uo,
            sign,
        }
    }

    /// `(ua, ub, oa, ob)` with `ub = ua ▷̲ oa` and `ob = oa ▷̄ ua`.
    #[inline]
    pub fn oriented_slots(&self) -> [usize; 4] {
        if self.sign > 0 {
            [self.uo, self.ui, self.oi, self.oo]
        } else {
            [self.ui, self.uo, self.oo, self.oi]
        }
    }

    fn slots(&self) -> [usize; 4] {
        [self.oi, self.oo, self.ui, self.uo]
    }

    /// Checks the crossing relation for a full labeling.
    pub fn is_satisfied(&self, x: &Biquandle, labels: &[usize]) -> bool {
        let [ua, ub, oa, ob] = self.oriented_slots().map(|s| labels[s]);
        x.under(ua, oa) == ub && x.over(oa, ua) == ob
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub semi_arcs: usize,
    #[serde(default)]
    pub free_components: usize,
    pub crossings: Vec<Crossing>,
}

impl LinkDiagram {
    /// Builds and validates a diagram.
    pub fn new(
        name: Option<String>,
        semi_arcs: usize,
        free_components: usize,
        crossings: Vec<Crossing>,
    ) -> Result<Self> {
        let d = LinkDiagram {
            name,
            semi_arcs,
            free_components,
            crossings,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        LinkDiagram {
            name: Some("unknot".into()),
            semi_arcs: 1,
            free_components: 1,
            crossings: Vec::new(),
        }
    }

    /// Parses the JSON crossing-code format and validates the slot structure.
    pub fn parse(text: &str) -> Result<Self> {
        let d: LinkDiagram = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Checks index ranges, signs and that every constrained semi-arc is
    /// entered once and left once.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDiagram(msg));
        if self.crossings.is_empty() && self.free_components == 0 {
            return bad("no crossings and no free components".into());
        }
        let mut starts = vec![0usize; self.semi_arcs];
        let mut ends = vec![0usize; self.semi_arcs];
        for (i, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return bad(format!("crossing {i} has sign {}, expected 1 or -1", c.sign));
            }
            for s in c.slots() {
                if s >= self.semi_arcs {
                    return bad(format!(
                        "crossing {i} uses semi-arc {s}, but only {} exist",
                        self.semi_arcs
                    ));
                }
            }
            ends[c.oi] += 1;
            ends[c.ui] += 1;
            starts[c.oo] += 1;
            starts[c.uo] += 1;
        }
        let mut free = 0;
        for a in 0..self.semi_arcs {
            match (ends[a], starts[a]) {
                (0, 0) => free += 1,
                (1, 1) => {}
                (e, _) if e != 1 => {
                    return bad(format!("semi-arc {a} appears {e} times as a crossing input"))
                }
                (_, s) => {
                    return bad(format!("semi-arc {a} appears {s} times as a crossing output"))
                }
            }
        }
        if free != self.free_components {
            return bad(format!(
                "{free} semi-arcs touch no crossing but free_components is {}",
                self.free_components
            ));
        }
        Ok(())
    }

    /// Semi-arcs in breadth-first order from semi-arc 0 through shared crossings.
    pub fn traversal_order(&self) -> Vec<usize> {
        let incident = self.incidence();
        let mut seen = vec![false; self.semi_arcs];
        let mut order = Vec::with_capacity(self.semi_arcs);
        for root in 0..self.semi_arcs {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                order.push(a);
                for &ci in &incident[a] {
                    for s in self.crossings[ci].slots() {
                        if !seen[s] {
                            seen[s] = true;
                            queue.push_back(s);
                        }
                    }
                }
            }
        }
        order
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.semi_arcs];
        for (i, c) in self.crossings.iter().enumerate() {
            for s in c.slots() {
                if !inc[s].contains(&i) {
                    inc[s].push(i);
                }
            }
        }
        inc
    }

    pub fn is_coloring(&self, x: &Biquandle, labels: &[usize]) -> bool {
        labels.len() == self.semi_arcs
            && labels.iter().all(|&l| l < x.size())
            && self.crossings.iter().all(|c| c.is_satisfied(x, labels))
    }

    fn fresh_arcs(&mut self, k: usize) -> usize {
        let first = self.semi_arcs;
        self.semi_arcs += k;
        first
    }

    /// Redirects the crossing that semi-arc `a` enters so that it is entered by `b`.
    fn reroute_end(&mut self, a: usize, b: usize) {
        for c in &mut self.crossings {
            if c.oi == a {
                c.oi = b;
            } else if c.ui == a {
                c.ui = b;
            }
        }
    }

    /// Reidemeister I: adds a curl on semi-arc `a`.
    ///
    /// `over_first` picks whether the strand first passes over or under
    /// itself; `sign` picks the curl's crossing sign. The curl splits `a`
    /// into `a`, a loop arc and a new tail arc.
    pub fn add_curl(&self, a: usize, over_first: bool, sign: i8) -> Result<Self> {
        let mut d = self.clone();
        let free_arc = d.crossings.iter().all(|c| !c.slots().contains(&a));
        // `head` is the semi-arc leaving the curl; a crossing-free loop closes on itself
        let (head, kink) = if free_arc {
            d.free_components -= 1;
            (a, d.fresh_arcs(1))
        } else {
            let head = d.fresh_arcs(2);
            d.reroute_end(a, head);
            (head, head + 1)
        };
        d.crossings.push(if over_first {
            Crossing::new(a, kink, kink, head, sign)
        } else {
            Crossing::new(kink, head, a, kink, sign)
        });
        d.name = self.name.as_ref().map(|n| format!("{n}+R1"));
        d.validate()?;
        Ok(d)
    }

    /// Reidemeister II: pushes semi-arc `over` across semi-arc `under`.
    ///
    /// With `parallel` the two strands pass the new crossings in the same
    /// order; otherwise the under strand meets them in reverse order.
    pub fn add_bigon(&self, over: usize, under: usize, sign: i8, parallel: bool) -> Result<Self> {
        if over == under {
            return Err(Error::InvalidDiagram(
                "a bigon needs two distinct semi-arcs".into(),
            ));
        }
        let mut d = self.clone();
        let touches = |d: &LinkDiagram, a: usize| d.crossings.iter().any(|c| c.slots().contains(&a));
        if !touches(&d, over) || !touches(&d, under) {
            return Err(Error::InvalidDiagram(
                "bigon semi-arcs must meet a crossing".into(),
            ));
        }
        let a2 = d.fresh_arcs(4);
        let (a3, b2, b3) = (a2 + 1, a2 + 2, a2 + 3);
        d.reroute_end(over, a3);
        d.reroute_end(under, b3);
        if parallel {
            d.crossings.push(Crossing::new(over, a2, under, b2, sign));
            d.crossings.push(Crossing::new(a2, a3, b2, b3, -sign));
        } else {
            d.crossings.push(Crossing::new(over, a2, b2, b3, sign));
            d.crossings.push(Crossing::new(a2, a3, under, b2, -sign));
        }
        d.name = self.name.as_ref().map(|n| format!("{n}+R2"));
        d.validate()?;
        Ok(d)
    }

    /// Appends a crossing-free unknotted component.
    pub fn with_free_component(&self) -> Self {
        let mut d = self.clone();
        d.semi_arcs += 1;
        d.free_components += 1;
        d
    }
}

/// Inverse tables used to push labels backwards through a crossing.
struct Inverses {
    n: usize,
    /// `beta_inv[o * n + v]` is the x with x ▷̲ o = v.
    beta_inv: Vec<usize>,
    /// `alpha_inv[u * n + v]` is the x with x ▷̄ u = v.
    alpha_inv: Vec<usize>,
    /// `switch_inv[ob * n + ub]` is the (ua, oa) with oa ▷̄ ua = ob, ua ▷̲ oa = ub.
    switch_inv: Vec<(usize, usize)>,
}

impl Inverses {
    fn new(x: &Biquandle) -> Self {
        let n = x.size();
        let mut beta_inv = vec![0; n * n];
        let mut alpha_inv = vec![0; n * n];
        let mut switch_inv = vec![(0, 0); n * n];
        for a in 0..n {
            for b in 0..n {
                beta_inv[b * n + x.under(a, b)] = a;
                alpha_inv[b * n + x.over(a, b)] = a;
                switch_inv[x.over(b, a) * n + x.under(a, b)] = (a, b);
            }
        }
        Inverses {
            n,
            beta_inv,
            alpha_inv,
            switch_inv,
        }
    }
}

const UNSET: usize = usize::MAX;

struct Solver<'a> {
    d: &'a LinkDiagram,
    x: &'a Biquandle,
    inv: Inverses,
    incident: Vec<Vec<usize>>,
    labels: Vec<usize>,
    trail: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn assign(&mut self, arc: usize, v: usize, queue: &mut Vec<usize>) -> bool {
        match self.labels[arc] {
            UNSET => {
                self.labels[arc] = v;
                self.trail.push(arc);
                queue.push(arc);
                true
            }
            w => w == v,
        }
    }

    /// Assigns `arc := v` and propagates forced labels. Returns false on conflict.
    fn set_and_propagate(&mut self, arc: usize, v: usize) -> bool {
        let mut queue = Vec::new();
        if !self.assign(arc, v, &mut queue) {
            return false;
        }
        while let Some(a) = queue.pop() {
            for k in 0..self.incident[a].len() {
                let ci = self.incident[a][k];
                if !self.propagate_crossing(ci, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn propagate_crossing(&mut self, ci: usize, queue: &mut Vec<usize>) -> bool {
        let slots = self.d.crossings[ci].oriented_slots();
        let [ua, ub, oa, ob] = slots.map(|s| self.labels[s]);
        let n = self.inv.n;
        let (ua, oa) = if ua != UNSET && oa != UNSET {
            (ua, oa)
        } else if ub != UNSET && oa != UNSET {
            (self.inv.beta_inv[oa * n + ub], oa)
        } else if ob != UNSET && ua != UNSET {
            (ua, self.inv.alpha_inv[ua * n + ob])
        } else if ob != UNSET && ub != UNSET {
            self.inv.switch_inv[ob * n + ub]
        } else {
            return true;
        };
        let values = [ua, self.x.under(ua, oa), oa, self.x.over(oa, ua)];
        slots
            .iter()
            .zip(values)
            .all(|(&s, v)| self.assign(s, v, queue))
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("non-empty trail");
            self.labels[a] = UNSET;
        }
    }

    fn search(&mut self, order: &[usize], pos: usize, out: &mut Vec<Coloring>) {
        let Some(idx) = (pos..order.len()).find(|&i| self.labels[order[i]] == UNSET) else {
            out.push(self.labels.clone());
            return;
        };
        let arc = order[idx];
        for v in 0..self.x.size() {
            let mark = self.trail.len();
            if self.set_and_propagate(arc, v) {
                self.search(order, idx + 1, out);
            }
            self.undo_to(mark);
        }
    }
}

/// All colorings of `d` by `x`, in lexicographic order of label tuples.
pub fn colorings(d: &LinkDiagram, x: &Biquandle) -> Vec<Coloring> {
    let mut solver = Solver {
        d,
        x,
        inv: Inverses::new(x),
        incident: d.incidence(),
        labels: vec![UNSET; d.semi_arcs],
        trail: Vec::new(),
    };
    let order = d.traversal_order();
    let mut out = Vec::new();
    solver.search(&order, 0, &mut out);
    debug_assert!(out.iter().all(|c| d.is_coloring(x, c)));
    out.sort_unstable();
    out
}

/// The number of colorings of `d` by `x`.
pub fn counting_invariant(d: &LinkDiagram, x: &Biquandle) -> usize {
    colorings(d, x).len()
}
