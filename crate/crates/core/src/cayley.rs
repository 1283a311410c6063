//! Balls in the right Cayley graph, right indegree, and structural
//! predicates of finite semigroups.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_rational::Ratio;

use crate::algebra::{Element, Engine, Form, Semigroup};
use crate::error::{domain, usage, Error, Result};

/// Breadth-first ball of the right Cayley graph of `S¹`, rooted at the
/// identity.
///
/// Elements are ordered by layer and, within a layer, by the shortlex-least
/// word reaching them. Positions in that order are the ball's own ids.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    radius: usize,
    rank: usize,
    elements: Vec<Element>,
    layer_starts: Vec<usize>,
    position: HashMap<Element, usize>,
    edges: Vec<usize>,
}

impl CayleyBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Elements first reached by words of length exactly `r`.
    pub fn layer(&self, r: usize) -> &[Element] {
        &self.elements[self.layer_starts[r]..self.layer_starts[r + 1]]
    }

    pub fn layer_of(&self, pos: usize) -> usize {
        self.layer_starts.partition_point(|&start| start <= pos) - 1
    }

    pub fn position(&self, e: Element) -> Option<usize> {
        self.position.get(&e).copied()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.position.contains_key(&e)
    }

    /// Elements of radius `< n`, whose outgoing edges are all recorded.
    pub fn inner_len(&self) -> usize {
        self.layer_starts[self.radius]
    }

    /// Position of `elements[pos] · x_i`, for inner positions.
    pub fn edge(&self, pos: usize, i: usize) -> Option<usize> {
        if pos < self.inner_len() && i < self.rank {
            Some(self.edges[pos * self.rank + i])
        } else {
            None
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Builds the ball of the given radius, failing once more than `cap`
/// elements have been discovered.
pub fn ball(sg: &mut Semigroup, radius: usize, cap: usize) -> Result<CayleyBall> {
    let rank = sg.rank();
    let root = sg.root();
    let mut elements = vec![root];
    let mut position = HashMap::new();
    position.insert(root, 0usize);
    let mut layer_starts = vec![0, 1];
    let mut edges = Vec::new();
    for r in 1..=radius {
        let (start, end) = (layer_starts[r - 1], layer_starts[r]);
        for pos in start..end {
            let s = elements[pos];
            for i in 0..rank {
                let t = sg.step(s, i);
                let next = elements.len();
                let tpos = *position.entry(t).or_insert_with(|| {
                    elements.push(t);
                    next
                });
                edges.push(tpos);
            }
            if elements.len() > cap {
                return Err(Error::Resource { cap, layer: r });
            }
        }
        layer_starts.push(elements.len());
    }
    Ok(CayleyBall {
        radius,
        rank,
        elements,
        layer_starts,
        position,
        edges,
    })
}

/// Largest right indegree per generator seen inside a ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndegreeStats {
    /// For generator `i`, the max over ball elements `s` of
    /// `|{t inner : t·x_i = s}|`.
    pub max: Vec<usize>,
    /// Ball position attaining the max, per generator.
    pub witness: Vec<Option<usize>>,
}

/// Right indegree per generator, counting only edges leaving inner ball
/// elements. A finite-truncation diagnostic, not a global decision.
pub fn right_indegree_stats(ball: &CayleyBall) -> IndegreeStats {
    let k = ball.rank();
    let mut max = vec![0; k];
    let mut witness = vec![None; k];
    let mut counts = vec![0usize; ball.len()];
    for i in 0..k {
        counts.iter_mut().for_each(|c| *c = 0);
        for pos in 0..ball.inner_len() {
            let t = ball.edges[pos * k + i];
            counts[t] += 1;
            if counts[t] > max[i] {
                max[i] = counts[t];
                witness[i] = Some(t);
            }
        }
    }
    IndegreeStats { max, witness }
}

/// Green's `J` structure and amenability-related predicates of a finite
/// semigroup. Element indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructureReport {
    pub order: usize,
    pub has_identity: bool,
    /// `J`-classes, each sorted, ordered by their least element.
    pub j_classes: Vec<Vec<usize>>,
    /// `j_leq[a][b]` iff class `a` is `≤_J` class `b`.
    pub j_leq: Vec<Vec<bool>>,
    /// The kernel: the unique minimum `J`-class.
    pub minimal_ideal: Vec<usize>,
    pub is_simple: bool,
    pub left_reversible: bool,
    pub klawe: bool,
    pub right_cancellative: bool,
}

impl FiniteStructureReport {
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.j_classes.iter().position(|c| c.contains(&x))
    }
}

/// Decides the structural predicates for a finite-table engine.
pub fn finite_structure(engine: &Engine) -> Result<FiniteStructureReport> {
    let table = engine
        .table()
        .ok_or_else(|| domain("structural predicates are decided for finite tables only"))?;
    let m = table.order();
    let mut cells = vec![0usize; m * m];
    for x in 0..m {
        for y in 0..m {
            let p = engine.mul_unchecked(&Form::Table(x as u32), &Form::Table(y as u32));
            let Form::Table(p) = p else { unreachable!() };
            cells[x * m + y] = p as usize;
        }
    }
    let mul = |x: usize, y: usize| cells[x * m + y];

    // Two-sided principal ideals S¹sS¹.
    let ideals: Vec<Vec<bool>> = (0..m)
        .map(|s| {
            let mut ideal = vec![false; m];
            ideal[s] = true;
            for x in 0..m {
                ideal[mul(x, s)] = true;
                ideal[mul(s, x)] = true;
                for y in 0..m {
                    ideal[mul(mul(x, s), y)] = true;
                }
            }
            ideal
        })
        .collect();
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);

    let mut j_classes: Vec<Vec<usize>> = Vec::new();
    for s in 0..m {
        match j_classes.iter_mut().find(|c| ideals[c[0]] == ideals[s]) {
            Some(c) => c.push(s),
            None => j_classes.push(vec![s]),
        }
    }
    let j_leq: Vec<Vec<bool>> = j_classes
        .iter()
        .map(|a| {
            j_classes
                .iter()
                .map(|b| subset(&ideals[a[0]], &ideals[b[0]]))
                .collect()
        })
        .collect();
    let minimum = (0..j_classes.len())
        .find(|&a| j_leq[a].iter().all(|&le| le))
        .expect("a finite semigroup has a minimum J-class");
    let minimal_ideal: Vec<usize> = (0..m)
        .filter(|&x| ideals[j_classes[minimum][0]][x])
        .collect();

    let right_ideals: Vec<Vec<bool>> = (0..m)
        .map(|s| {
            let mut r = vec![false; m];
            r[s] = true;
            for x in 0..m {
                r[mul(s, x)] = true;
            }
            r
        })
        .collect();
    let left_reversible = (0..m).all(|s| {
        (0..m).all(|t| {
            right_ideals[s]
                .iter()
                .zip(&right_ideals[t])
                .any(|(&a, &b)| a && b)
        })
    });

    let klawe = (0..m).all(|s| {
        (0..m).all(|x| {
            (0..m).all(|y| mul(s, x) != mul(s, y) || (0..m).any(|t| mul(x, t) == mul(y, t)))
        })
    });

    let right_cancellative = (0..m).all(|z| {
        let mut seen = vec![false; m];
        (0..m).all(|x| !core::mem::replace(&mut seen[mul(x, z)], true))
    });

    Ok(FiniteStructureReport {
        order: m,
        has_identity: table.identity().is_some(),
        is_simple: j_classes.len() == 1,
        j_classes,
        j_leq,
        minimal_ideal,
        left_reversible,
        klawe,
        right_cancellative,
    })
}

/// Which side `H` acts on in [`folner_defect`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `|Fs \ F|`
    Right,
    /// `|sF \ F|`
    Left,
}

/// `max_{s ∈ H} |Fs \ F| / |F|` (or `sF` for [`Side::Left`]).
pub fn folner_defect(
    sg: &mut Semigroup,
    f: &[Element],
    h: &[Element],
    side: Side,
) -> Result<Ratio<u64>> {
    let f: BTreeSet<Element> = f.iter().copied().collect();
    if f.is_empty() {
        return Err(usage("the Følner set F must be nonempty"));
    }
    let mut worst = 0u64;
    for &s in h {
        let mut image = BTreeSet::new();
        for &x in &f {
            let p = match side {
                Side::Right => sg.mul(x, s)?,
                Side::Left => sg.mul(s, x)?,
            };
            image.insert(p);
        }
        let escaped = image.difference(&f).count() as u64;
        worst = worst.max(escaped);
    }
    Ok(Ratio::new(worst, f.len() as u64))
}
