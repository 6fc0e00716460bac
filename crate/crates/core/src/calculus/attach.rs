//! The two coloured handle moves.

use super::manifold::{Applied, Attach1Outcome, ColouredManifold, Generator, GeneratorKind, TCurve};
use super::{CalculusError, Colour};

/// `base` if no id of the same kind equals it, otherwise `base` with primes
/// appended until it is free.
pub(crate) fn fresh_name(base: String, taken: impl Fn(&str) -> bool) -> String {
    let mut name = base;
    while taken(&name) {
        name.push('\'');
    }
    name
}

fn add(a: &[i64], b: &[i64], sign: i64) -> Result<Vec<i64>, CalculusError> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| y.checked_mul(sign).and_then(|y| x.checked_add(y)).ok_or(CalculusError::Overflow))
        .collect()
}

impl ColouredManifold {
    /// Appends a handle generator on `component` and returns its index.
    fn add_handle_generator(&mut self, component: usize) -> usize {
        let count = self.generators.iter().filter(|g| g.kind == GeneratorKind::Handle).count();
        let name = fresh_name(format!("h{}", count + 1), |n| self.generator_index(n).is_some());
        self.generators.push(Generator { name, kind: GeneratorKind::Handle, component });
        for t in &mut self.t_curves {
            t.class.push(0);
        }
        for r in &mut self.relations {
            r.push(0);
        }
        self.generators.len() - 1
    }

    fn relabel_component(&mut self, from: usize, to: usize) {
        for g in &mut self.generators {
            if g.component == from {
                g.component = to;
            }
        }
        for t in &mut self.t_curves {
            if t.component == from {
                t.component = to;
            }
        }
        for r in &mut self.regions {
            if r.component == from {
                r.component = to;
            }
        }
    }

    /// Joins the regions of one colour at the two feet of a 1-handle whose
    /// feet sit on curves `a` and `b` (possibly equal), and writes `new_curves`
    /// in place of them. Returns the id of the resulting region.
    fn join_regions(&mut self, colour: Colour, a: &TCurve, b: &TCurve, new_curves: &[String]) -> String {
        let side = |t: &TCurve| if colour == Colour::White { t.white.clone() } else { t.gray.clone() };
        let (ra, rb) = (side(a), side(b));
        let i = if ra != rb {
            let other = self.regions.remove(self.region_index(&rb));
            let id = fresh_name(format!("{ra}+{rb}"), |n| self.region(n).is_some());
            let i = self.region_index(&ra);
            let r = &mut self.regions[i];
            r.id = id;
            r.euler += other.euler - 1;
            r.boundary.extend(other.boundary);
            i
        } else {
            let i = self.region_index(&ra);
            self.regions[i].euler -= 1;
            i
        };
        let r = &mut self.regions[i];
        let at = r.boundary.iter().position(|x| *x == a.id || *x == b.id).expect("foot curve on its region");
        r.boundary.retain(|x| *x != a.id && *x != b.id);
        for (k, c) in new_curves.iter().enumerate() {
            r.boundary.insert(at + k, c.clone());
        }
        let id = r.id.clone();
        for t in &mut self.t_curves {
            let side = if colour == Colour::White { &mut t.white } else { &mut t.gray };
            if *side == ra || *side == rb {
                *side = id.clone();
            }
        }
        id
    }

    /// Attaches a 1-handle with feet on the t-curves `foot_a` and `foot_b`.
    ///
    /// Two different curves merge into one whose class is the sum. If they lie
    /// on different components the components join and `H_1` is unchanged;
    /// otherwise a new handle generator `h` is added. Both feet on one curve
    /// split it into two curves with classes `h` and `[tau] - h`. On each
    /// colour the regions at the two feet join along a strip, lowering the
    /// Euler characteristic of that colour by one.
    pub fn attach_1_handle(&self, foot_a: &str, foot_b: &str) -> Result<ColouredManifold, CalculusError> {
        if self.history.iter().any(|h| matches!(h, Applied::Attach2 { .. })) {
            return Err(CalculusError::OrderViolation("1-handle after a 2-handle".into()));
        }
        let ia = self.curve_index(foot_a)?;
        let ib = self.curve_index(foot_b)?;
        let mut m = self.clone();
        let a = self.t_curves[ia].clone();
        let b = self.t_curves[ib].clone();

        let (outcome, new_curves, generator) = if ia != ib {
            let joins = a.component != b.component;
            let generator = if joins {
                m.relabel_component(a.component.max(b.component), a.component.min(b.component));
                None
            } else {
                Some(m.add_handle_generator(a.component))
            };
            let width = m.generators.len();
            let (mut ca, mut cb) = (a.class.clone(), b.class.clone());
            ca.resize(width, 0);
            cb.resize(width, 0);
            let id = fresh_name(format!("{}+{}", a.id, b.id), |n| m.curve(n).is_some());
            let curve = TCurve {
                id: id.clone(),
                class: add(&ca, &cb, 1)?,
                component: a.component.min(b.component),
                white: String::new(),
                gray: String::new(),
            };
            let at = ia.min(ib);
            m.t_curves.retain(|t| t.id != a.id && t.id != b.id);
            m.t_curves.insert(at, curve);
            let outcome = if joins { Attach1Outcome::JoinComponents } else { Attach1Outcome::MergeCurves };
            (outcome, vec![id], generator)
        } else {
            let h = m.add_handle_generator(a.component);
            let mut e = vec![0; m.generators.len()];
            e[h] = 1;
            let mut class = a.class.clone();
            class.push(0);
            let first = fresh_name(format!("{}.1", a.id), |n| m.curve(n).is_some());
            let second = fresh_name(format!("{}.2", a.id), |n| m.curve(n).is_some() || n == first);
            let t1 = TCurve { id: first.clone(), class: e.clone(), component: a.component, white: String::new(), gray: String::new() };
            let t2 = TCurve { id: second.clone(), class: add(&class, &e, -1)?, component: a.component, white: String::new(), gray: String::new() };
            m.t_curves.splice(ia..=ia, [t1, t2]);
            (Attach1Outcome::Split, vec![first, second], Some(h))
        };

        let white = m.join_regions(Colour::White, &a, &b, &new_curves);
        let gray = m.join_regions(Colour::Gray, &a, &b, &new_curves);
        for t in &mut m.t_curves {
            if new_curves.contains(&t.id) {
                t.white = white.clone();
                t.gray = gray.clone();
            }
        }
        let generator = generator.map(|g| m.generators[g].name.clone());
        m.history.push(Applied::Attach1 {
            feet: [foot_a.to_string(), foot_b.to_string()],
            outcome,
            curves: new_curves,
            generator,
        });
        debug_assert_eq!(m.validate(), Ok(()));
        Ok(m)
    }

    /// Attaches a 2-handle along the annulus around `curve`. The curve
    /// disappears, its class becomes a relation, and each adjacent region is
    /// capped by a disk of its own colour.
    pub fn attach_2_handle(&self, curve: &str) -> Result<ColouredManifold, CalculusError> {
        let i = self.curve_index(curve)?;
        let mut m = self.clone();
        let t = m.t_curves.remove(i);
        m.relations.push(t.class.clone());
        for side in [&t.white, &t.gray] {
            let r = m.region_index(side);
            m.regions[r].euler += 1;
            m.regions[r].boundary.retain(|x| *x != t.id);
        }
        m.history.push(Applied::Attach2 { curve: t.id });
        debug_assert_eq!(m.validate(), Ok(()));
        Ok(m)
    }
}
