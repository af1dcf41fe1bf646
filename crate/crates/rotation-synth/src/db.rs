//! Exhaustive table of Clifford+T normal forms (T|ε)(HT|SHT)*C up to a
//! T-count cap, ordered by (gate count, T-count, word).

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::su2::{self, M};
use crate::{SynthError, G1};

const TUBE: f64 = 0.0025;

#[derive(Clone, Debug)]
pub struct Entry {
    /// Time-ordered gate codes (see [`G1::code`]).
    pub word: String,
    pub q: [f64; 4],
    pub t_count: u32,
}

impl Entry {
    pub fn gates(&self) -> Vec<G1> {
        self.word.chars().map(|c| G1::from_code(c).unwrap()).collect()
    }
}

#[derive(Debug)]
pub struct Db {
    tcap: u32,
    entries: Vec<Entry>,
    tube: Vec<u32>,
    exact: HashMap<[i64; 4], u32>,
}

fn canon(q: &[f64; 4]) -> [f64; 4] {
    let lead = q.iter().copied().find(|x| x.abs() > 1e-7).unwrap_or(1.0);
    if lead < 0.0 {
        q.map(|x| -x)
    } else {
        *q
    }
}

fn key(q: &[f64; 4]) -> [i64; 4] {
    canon(q).map(|x| (x * 1e6).round() as i64)
}

/// The 24 single-qubit Cliffords as shortest time-ordered words over H, S, S†.
pub fn cliffords() -> Vec<(String, M)> {
    let gens = [G1::H, G1::S, G1::Sdg];
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(String::new(), su2::ID)]);
    seen.insert(key(&su2::quat(&su2::ID)), ());
    while let Some((w, m)) = queue.pop_front() {
        out.push((w.clone(), m));
        for g in gens {
            let m2 = su2::mul(&su2::g1(g), &m);
            if seen.insert(key(&su2::quat(&m2)), ()).is_none() {
                let mut w2 = w.clone();
                w2.push(g.code());
                queue.push_back((w2, m2));
            }
        }
    }
    out
}

impl Db {
    pub fn build(tcap: u32) -> Db {
        let cl = cliffords();
        let mut entries = Vec::new();
        // prefixes carried in operator order; time order is the reverse
        let mut stack: Vec<(Vec<G1>, M, u32)> = vec![(vec![], su2::ID, 0), (vec![G1::T], su2::g1(G1::T), 1)];
        while let Some((ops, m, tc)) = stack.pop() {
            let prefix_time: String = ops.iter().rev().map(|g| g.code()).collect();
            for (cw, cm) in &cl {
                let full = su2::mul(&m, cm);
                let mut word = cw.clone();
                word.push_str(&prefix_time);
                entries.push(Entry {
                    word,
                    q: canon(&su2::quat(&full)),
                    t_count: tc,
                });
            }
            if tc < tcap {
                for syl in [&[G1::H, G1::T][..], &[G1::S, G1::H, G1::T][..]] {
                    let mut ops2 = ops.clone();
                    let mut m2 = m;
                    for &g in syl {
                        ops2.push(g);
                        m2 = su2::mul(&m2, &su2::g1(g));
                    }
                    stack.push((ops2, m2, tc + 1));
                }
            }
        }
        Db::from_entries(tcap, entries)
    }

    fn from_entries(tcap: u32, mut entries: Vec<Entry>) -> Db {
        entries.sort_by(|a, b| {
            (a.word.len(), a.t_count, &a.word).cmp(&(b.word.len(), b.t_count, &b.word))
        });
        let tube = entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.q[2] * e.q[2] + e.q[3] * e.q[3] <= TUBE)
            .map(|(i, _)| i as u32)
            .collect();
        let mut exact = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            exact.entry(key(&e.q)).or_insert(i as u32);
        }
        Db {
            tcap,
            entries,
            tube,
            exact,
        }
    }

    pub fn tcap(&self) -> u32 {
        self.tcap
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// First entry in table order within `eps` of the target. `z_axis`
    /// restricts the scan to entries near the Rz circle when that is safe.
    pub fn first_within(&self, q: &[f64; 4], eps: f64, z_axis: bool) -> Option<&Entry> {
        let tol = eps * (1.0 - 1e-12);
        if z_axis && eps * eps <= TUBE / 4.0 {
            self.tube
                .iter()
                .map(|&i| &self.entries[i as usize])
                .find(|e| su2::qdist(&e.q, q) <= tol)
        } else {
            self.entries.iter().find(|e| su2::qdist(&e.q, q) <= tol)
        }
    }

    pub fn nearest(&self, q: &[f64; 4]) -> (&Entry, f64) {
        let mut best = (0usize, f64::INFINITY);
        for (i, e) in self.entries.iter().enumerate() {
            let d = su2::qdist(&e.q, q);
            if d < best.1 - 1e-13 {
                best = (i, d);
            }
        }
        (&self.entries[best.0], best.1)
    }

    /// Entry equal to the target up to phase.
    pub fn exact(&self, q: &[f64; 4]) -> Option<&Entry> {
        if let Some(&i) = self.exact.get(&key(q)) {
            let e = &self.entries[i as usize];
            if su2::qdist(&e.q, q) < 1e-7 {
                return Some(e);
            }
        }
        let (e, d) = self.nearest(q);
        (d < 1e-7).then_some(e)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# rotdb tcap {}\n", self.tcap);
        for e in &self.entries {
            let w = if e.word.is_empty() { "-" } else { &e.word };
            writeln!(s, "{:.12},{:.12},{:.12},{:.12} {w}", e.q[0], e.q[1], e.q[2], e.q[3]).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Db, SynthError> {
        let bad = |line: usize, msg: &str| SynthError::Db(format!("line {line}: {msg}"));
        let mut lines = text.lines().enumerate();
        let tcap = lines
            .next()
            .and_then(|(_, l)| l.strip_prefix("# rotdb tcap "))
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| bad(1, "missing `# rotdb tcap` header"))?;
        let mut entries = Vec::new();
        for (i, l) in lines {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            let (fp, w) = l.split_once(' ').ok_or_else(|| bad(i + 1, "expected fingerprint and word"))?;
            let stored: Vec<f64> = fp.split(',').filter_map(|x| x.parse().ok()).collect();
            if stored.len() != 4 {
                return Err(bad(i + 1, "bad fingerprint"));
            }
            let w = if w == "-" { "" } else { w };
            let gates: Option<Vec<G1>> = w.chars().map(G1::from_code).collect();
            let gates = gates.ok_or_else(|| bad(i + 1, "bad gate code"))?;
            let q = canon(&su2::quat(&su2::word(&gates)));
            let fp = [stored[0], stored[1], stored[2], stored[3]];
            if su2::qdist(&q, &fp) > 1e-6 {
                return Err(bad(i + 1, "fingerprint does not match word"));
            }
            let t_count = gates.iter().filter(|g| matches!(g, G1::T | G1::Tdg)).count() as u32;
            entries.push(Entry {
                word: w.to_string(),
                q,
                t_count,
            });
        }
        Ok(Db::from_entries(tcap, entries))
    }

    /// Load from `path` when it exists with the same cap, else build and save.
    pub fn load_or_build(path: &Path, tcap: u32) -> Result<Db, SynthError> {
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| SynthError::Db(e.to_string()))?;
            let db = Db::from_text(&text)?;
            if db.tcap == tcap {
                return Ok(db);
            }
        }
        let db = Db::build(tcap);
        std::fs::write(path, db.to_text()).map_err(|e| SynthError::Db(e.to_string()))?;
        Ok(db)
    }
}
