use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{eval_word, Engine, Form, GeneratorChoice, Word};
use crate::error::{usage, Result};

/// Dense handle of an interned element. Only meaningful for the
/// [`Semigroup`] that issued it; canonical strings are the stable names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const UNKNOWN: u32 = u32::MAX;

/// An engine with a fixed generator choice, an interner for canonical forms
/// and a cache of right Cayley graph edges.
///
/// Ids are handed out in first-lookup order, so identical call sequences give
/// identical ids. The identity of `S¹` is always element 0.
#[derive(Clone, Debug)]
pub struct Semigroup {
    engine: Engine,
    gens: GeneratorChoice,
    forms: Vec<Form>,
    index: HashMap<Form, u32>,
    steps: Vec<u32>,
}

impl Semigroup {
    pub fn new(engine: Engine, gens: GeneratorChoice) -> Result<Self> {
        for t in gens.targets() {
            engine.validate(t)?;
        }
        let mut sg = Semigroup {
            engine,
            gens,
            forms: Vec::new(),
            index: HashMap::new(),
            steps: Vec::new(),
        };
        let one = sg.engine.identity();
        sg.intern(one);
        Ok(sg)
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn generators(&self) -> &GeneratorChoice {
        &self.gens
    }

    /// `|X|`.
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Identity of `S¹`, the root of every walk and ball.
    pub fn root(&self) -> Element {
        Element(0)
    }

    /// Number of interned elements.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn intern(&mut self, form: Form) -> Element {
        if let Some(&id) = self.index.get(&form) {
            return Element(id);
        }
        let id = self.forms.len() as u32;
        self.forms.push(form.clone());
        self.index.insert(form, id);
        self.steps
            .extend(core::iter::repeat_n(UNKNOWN, self.gens.len()));
        Element(id)
    }

    pub fn lookup(&self, form: &Form) -> Option<Element> {
        self.index.get(form).map(|&id| Element(id))
    }

    pub fn form(&self, e: Element) -> Result<&Form> {
        self.forms
            .get(e.index())
            .ok_or_else(|| usage("element handle does not belong to this semigroup"))
    }

    pub fn render(&self, e: Element) -> String {
        match self.forms.get(e.index()) {
            Some(f) => self.engine.render(f),
            None => String::from("?"),
        }
    }

    /// `s · x_i`, cached.
    ///
    /// # Panics
    /// If `s` was not issued by this semigroup or `i >= |X|`.
    pub fn step(&mut self, s: Element, i: usize) -> Element {
        let k = self.gens.len();
        assert!(i < k, "generator index out of range");
        let slot = s.index() * k + i;
        let cached = self.steps[slot];
        if cached != UNKNOWN {
            return Element(cached);
        }
        let product = self
            .engine
            .mul_unchecked(&self.forms[s.index()], &self.gens.targets()[i]);
        let t = self.intern(product);
        self.steps[slot] = t.0;
        t
    }

    /// Cached `s · x_i` without interning anything new.
    pub fn cached_step(&self, s: Element, i: usize) -> Option<Element> {
        let k = self.gens.len();
        match self.steps.get(s.index() * k + i) {
            Some(&t) if t != UNKNOWN => Some(Element(t)),
            _ => None,
        }
    }

    pub fn mul(&mut self, s: Element, t: Element) -> Result<Element> {
        let product = self.engine.mul(self.form(s)?, self.form(t)?)?;
        Ok(self.intern(product))
    }

    pub fn eval(&mut self, word: &Word) -> Result<Element> {
        let form = eval_word(&self.engine, &self.gens, word)?;
        Ok(self.intern(form))
    }

    /// Interns the element named by a word over the generators; `1` names
    /// the identity of `S¹` even when the engine has none of its own.
    pub fn parse_element(&mut self, text: &str) -> Result<Element> {
        let word = self.gens.parse_word(text)?;
        if word.is_empty() {
            return Ok(self.root());
        }
        self.eval(&word)
    }

    /// Word length is an invariant: the engine is homogeneous and every
    /// generator has the same positive degree.
    pub fn is_graded(&self) -> bool {
        let mut degrees = self.gens.targets().iter().map(|t| self.engine.degree(t));
        let Some(Some(first)) = degrees.next() else {
            return false;
        };
        first > 0 && degrees.all(|d| d == Some(first))
    }
}
