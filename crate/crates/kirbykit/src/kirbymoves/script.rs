use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linkdiagram::{Component, Diagram, HandleKind};

use super::moves::{
    add_23_pair, blow_down, blow_up, cancel_12, cancel_23, handle_slide, twist_region, MoveError,
    Multiplicities,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("script line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("move {index} ({mv}) failed: {source}")]
    Replay {
        index: usize,
        mv: String,
        source: MoveError,
    },
}

/// One primitive move. `Uncancel12` and `Unadd23` are the data-carrying
/// inverses of the removal moves; they never appear in hand-written scripts
/// but keep every script invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Twist { eps: i8, m: Multiplicities },
    BlowUp { eps: i8, m: Multiplicities, id: Option<String> },
    BlowDown { id: String },
    Slide { i: String, j: String, s: i8 },
    Cancel12 { u: String, h: String },
    Add23 { delta: String, m: Multiplicities },
    Cancel23 { id: String },
    Uncancel12 {
        u: String,
        h: String,
        u_pos: usize,
        h_pos: usize,
        framing: BigInt,
        lk_uh: BigInt,
        u_cert: bool,
        h_cert: bool,
        m: Multiplicities,
    },
    Unadd23 { id: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveScript(pub Vec<Move>);

fn fmt_mult(m: &Multiplicities) -> String {
    let parts: Vec<String> = m
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    format!("m=({})", parts.join(","))
}

fn fmt_sign(s: i8) -> &'static str {
    if s > 0 {
        "+1"
    } else {
        "-1"
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Twist { eps, m } => write!(f, "twist {} {}", fmt_sign(*eps), fmt_mult(m)),
            Move::BlowUp { eps, m, id } => {
                write!(f, "blowup {} {}", fmt_sign(*eps), fmt_mult(m))?;
                if let Some(id) = id {
                    write!(f, " id={id}")?;
                }
                Ok(())
            }
            Move::BlowDown { id } => write!(f, "blowdown {id}"),
            Move::Slide { i, j, s } => write!(f, "slide {i} over {j} s={}", fmt_sign(*s)),
            Move::Cancel12 { u, h } => write!(f, "cancel12 u={u} h={h}"),
            Move::Add23 { delta, m } => {
                write!(f, "add23 delta={delta}")?;
                if m.values().any(|v| !v.is_zero()) {
                    write!(f, " {}", fmt_mult(m))?;
                }
                Ok(())
            }
            Move::Cancel23 { id } => write!(f, "cancel23 {id}"),
            Move::Uncancel12 { u, h, u_pos, h_pos, framing, lk_uh, u_cert, h_cert, m } => {
                write!(f, "uncancel12 u={u} h={h} up={u_pos} hp={h_pos} f={framing} l={lk_uh}")?;
                if m.values().any(|v| !v.is_zero()) {
                    write!(f, " {}", fmt_mult(m))?;
                }
                if *u_cert {
                    write!(f, " ucert")?;
                }
                if *h_cert {
                    write!(f, " hcert")?;
                }
                Ok(())
            }
            Move::Unadd23 { id } => write!(f, "unadd23 {id}"),
        }
    }
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for mv in &self.0 {
            writeln!(f, "{mv}")?;
        }
        Ok(())
    }
}

fn parse_mult(line: usize, tok: &str) -> Result<Multiplicities, ScriptError> {
    let err = |msg: String| ScriptError::Parse { line, msg };
    let inner = tok
        .strip_prefix("m=(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err(format!("malformed multiplicity token {tok:?}")))?;
    let mut m = Multiplicities::new();
    if inner.is_empty() {
        return Ok(m);
    }
    for part in inner.split(',') {
        let (id, v) = part
            .split_once(':')
            .ok_or_else(|| err(format!("malformed entry {part:?}")))?;
        let v = BigInt::from_str(v).map_err(|_| err(format!("bad count {v:?}")))?;
        m.insert(id.to_string(), v);
    }
    Ok(m)
}

fn parse_sign(line: usize, tok: &str) -> Result<i8, ScriptError> {
    match tok {
        "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(ScriptError::Parse {
            line,
            msg: format!("expected +1 or -1, got {other:?}"),
        }),
    }
}

impl MoveScript {
    pub fn parse(text: &str) -> Result<MoveScript, ScriptError> {
        let mut moves = Vec::new();
        for (ln0, raw) in text.lines().enumerate() {
            let line = ln0 + 1;
            let err = |msg: &str| ScriptError::Parse { line, msg: msg.to_string() };
            let content = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let toks: Vec<&str> = content.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let mv = match toks[0] {
                "twist" => {
                    if toks.len() != 3 {
                        return Err(err("twist needs: twist ±1 m=(...)"));
                    }
                    Move::Twist { eps: parse_sign(line, toks[1])?, m: parse_mult(line, toks[2])? }
                }
                "blowup" => {
                    if toks.len() < 3 || toks.len() > 4 {
                        return Err(err("blowup needs: blowup ±1 m=(...) [id=..]"));
                    }
                    let id = match toks.get(3) {
                        Some(t) => Some(
                            t.strip_prefix("id=")
                                .ok_or_else(|| err("expected id=.."))?
                                .to_string(),
                        ),
                        None => None,
                    };
                    Move::BlowUp {
                        eps: parse_sign(line, toks[1])?,
                        m: parse_mult(line, toks[2])?,
                        id,
                    }
                }
                "blowdown" => {
                    if toks.len() != 2 {
                        return Err(err("blowdown needs a component id"));
                    }
                    Move::BlowDown { id: toks[1].to_string() }
                }
                "slide" => {
                    if toks.len() != 5 || toks[2] != "over" {
                        return Err(err("slide needs: slide <i> over <j> s=±1"));
                    }
                    let s = toks[4]
                        .strip_prefix("s=")
                        .ok_or_else(|| err("expected s=±1"))?;
                    Move::Slide {
                        i: toks[1].to_string(),
                        j: toks[3].to_string(),
                        s: parse_sign(line, s)?,
                    }
                }
                "cancel12" => {
                    if toks.len() != 3 {
                        return Err(err("cancel12 needs u=.. h=.."));
                    }
                    let u = toks[1].strip_prefix("u=").ok_or_else(|| err("expected u=.."))?;
                    let h = toks[2].strip_prefix("h=").ok_or_else(|| err("expected h=.."))?;
                    Move::Cancel12 { u: u.to_string(), h: h.to_string() }
                }
                "add23" => {
                    if toks.len() < 2 || toks.len() > 3 {
                        return Err(err("add23 needs delta=.. [m=(...)]"));
                    }
                    let delta = toks[1]
                        .strip_prefix("delta=")
                        .ok_or_else(|| err("expected delta=.."))?;
                    let m = match toks.get(2) {
                        Some(t) => parse_mult(line, t)?,
                        None => Multiplicities::new(),
                    };
                    Move::Add23 { delta: delta.to_string(), m }
                }
                "cancel23" => {
                    if toks.len() != 2 {
                        return Err(err("cancel23 needs a component id"));
                    }
                    Move::Cancel23 { id: toks[1].to_string() }
                }
                "uncancel12" => {
                    if toks.len() < 7 {
                        return Err(err("uncancel12 needs u= h= up= hp= f= l="));
                    }
                    let u = toks[1].strip_prefix("u=").ok_or_else(|| err("expected u=.."))?;
                    let h = toks[2].strip_prefix("h=").ok_or_else(|| err("expected h=.."))?;
                    let up = toks[3].strip_prefix("up=").ok_or_else(|| err("expected up=.."))?;
                    let hp = toks[4].strip_prefix("hp=").ok_or_else(|| err("expected hp=.."))?;
                    let fr = toks[5].strip_prefix("f=").ok_or_else(|| err("expected f=.."))?;
                    let l = toks[6].strip_prefix("l=").ok_or_else(|| err("expected l=.."))?;
                    let u_pos: usize = up.parse().map_err(|_| err("bad position"))?;
                    let h_pos: usize = hp.parse().map_err(|_| err("bad position"))?;
                    let framing =
                        BigInt::from_str(fr).map_err(|_| err("bad framing"))?;
                    let lk_uh = BigInt::from_str(l).map_err(|_| err("bad linking"))?;
                    let mut m = Multiplicities::new();
                    let mut u_cert = false;
                    let mut h_cert = false;
                    for t in &toks[7..] {
                        match *t {
                            "ucert" => u_cert = true,
                            "hcert" => h_cert = true,
                            t if t.starts_with("m=(") => m = parse_mult(line, t)?,
                            other => {
                                return Err(err(&format!("unexpected token {other:?}")))
                            }
                        }
                    }
                    Move::Uncancel12 {
                        u: u.to_string(),
                        h: h.to_string(),
                        u_pos,
                        h_pos,
                        framing,
                        lk_uh,
                        u_cert,
                        h_cert,
                        m,
                    }
                }
                "unadd23" => {
                    if toks.len() != 2 {
                        return Err(err("unadd23 needs a component id"));
                    }
                    Move::Unadd23 { id: toks[1].to_string() }
                }
                other => return Err(err(&format!("unknown move {other:?}"))),
            };
            moves.push(mv);
        }
        Ok(MoveScript(moves))
    }

    /// Apply one move; returns the new diagram plus the id a blow-up or
    /// add23 actually used (needed for inversion).
    fn apply_one(d: &Diagram, mv: &Move) -> Result<(Diagram, Option<String>), MoveError> {
        match mv {
            Move::Twist { eps, m } => Ok((twist_region(d, *eps, m)?, None)),
            Move::BlowUp { eps, m, id } => {
                let (out, used) = blow_up(d, *eps, m, id.as_deref())?;
                Ok((out, Some(used)))
            }
            Move::BlowDown { id } => Ok((blow_down(d, id)?, None)),
            Move::Slide { i, j, s } => Ok((handle_slide(d, i, j, *s)?, None)),
            Move::Cancel12 { u, h } => Ok((cancel_12(d, u, h)?, None)),
            Move::Add23 { delta, m } => {
                let (out, used) = add_23_pair(d, Some(delta), m)?;
                Ok((out, Some(used)))
            }
            Move::Cancel23 { id } => Ok((cancel_23(d, id)?, None)),
            Move::Uncancel12 { u, h, u_pos, h_pos, framing, lk_uh, u_cert, h_cert, m } => {
                let mut out = d.clone();
                let cu = Component {
                    id: u.clone(),
                    kind: HandleKind::Dotted,
                    unknot_certificate: *u_cert,
                };
                let ch = Component {
                    id: h.clone(),
                    kind: HandleKind::Framed(framing.clone()),
                    unknot_certificate: *h_cert,
                };
                if u_pos <= h_pos {
                    out.insert_component(*u_pos, cu)?;
                    out.insert_component(*h_pos, ch)?;
                } else {
                    out.insert_component(*h_pos, ch)?;
                    out.insert_component(*u_pos, cu)?;
                }
                out.set_lk(u, h, lk_uh.clone())?;
                for (k, v) in m {
                    out.set_lk(h, k, v.clone())?;
                }
                out.mark_planar_stale();
                Ok((out, None))
            }
            Move::Unadd23 { id } => {
                let c = d.component(id)?;
                match c.framing() {
                    Some(f) if f.is_zero() => {}
                    Some(f) => {
                        return Err(MoveError::NeedsZeroFraming(id.clone(), f.clone()))
                    }
                    None => return Err(MoveError::NeedsFramed(id.clone())),
                }
                if d.three_handles() == 0 {
                    return Err(MoveError::NoThreeHandle);
                }
                let mut out = d.clone();
                out.remove_component(id)?;
                out.set_three_handles(out.three_handles() - 1);
                out.mark_planar_stale();
                Ok((out, None))
            }
        }
    }

    /// Atomic replay: either the whole script applies or the error reports
    /// the failing move and the input is left untouched.
    pub fn replay(&self, d: &Diagram) -> Result<Diagram, ScriptError> {
        let mut cur = d.clone();
        for (index, mv) in self.0.iter().enumerate() {
            let (next, _) = Self::apply_one(&cur, mv).map_err(|source| ScriptError::Replay {
                index,
                mv: mv.to_string(),
                source,
            })?;
            cur = next;
        }
        Ok(cur)
    }

    /// Inverse script relative to a base diagram: replays forward to capture
    /// the data each removal destroys. Replaying `self` then the result
    /// restores `base` exactly.
    pub fn invert_against(&self, base: &Diagram) -> Result<MoveScript, ScriptError> {
        let mut cur = base.clone();
        let mut inv: Vec<Move> = Vec::with_capacity(self.0.len());
        for (index, mv) in self.0.iter().enumerate() {
            let fail = |source| ScriptError::Replay { index, mv: mv.to_string(), source };
            let inverse = match mv {
                Move::Twist { eps, m } => Move::Twist { eps: -eps, m: m.clone() },
                Move::BlowUp { .. } => Move::BlowDown { id: String::new() }, // patched below
                Move::BlowDown { id } => {
                    let c = cur.component(id).map_err(|e| fail(e.into()))?;
                    let f = c.framing().cloned().unwrap_or_default();
                    let eps = if f > BigInt::zero() { 1 } else { -1 };
                    let mut m = Multiplicities::new();
                    for other in cur.components() {
                        if other.id != *id {
                            let l = cur.lk(id, &other.id);
                            if !l.is_zero() {
                                m.insert(other.id.clone(), l);
                            }
                        }
                    }
                    Move::BlowUp { eps, m, id: Some(id.clone()) }
                }
                Move::Slide { i, j, s } => Move::Slide { i: i.clone(), j: j.clone(), s: -s },
                Move::Cancel12 { u, h } => {
                    let cu = cur.component(u).map_err(|e| fail(e.into()))?;
                    let ch = cur.component(h).map_err(|e| fail(e.into()))?;
                    let u_pos = cur.index_of(u).unwrap_or(0);
                    let h_pos = cur.index_of(h).unwrap_or(0);
                    let framing = ch.framing().cloned().unwrap_or_default();
                    let mut m = Multiplicities::new();
                    for other in cur.components() {
                        if other.id != *u && other.id != *h {
                            let l = cur.lk(h, &other.id);
                            if !l.is_zero() {
                                m.insert(other.id.clone(), l);
                            }
                        }
                    }
                    Move::Uncancel12 {
                        u: u.clone(),
                        h: h.clone(),
                        u_pos,
                        h_pos,
                        framing,
                        lk_uh: cur.lk(u, h),
                        u_cert: cu.unknot_certificate,
                        h_cert: ch.unknot_certificate,
                        m,
                    }
                }
                Move::Add23 { delta, m } => {
                    if m.values().any(|v| !v.is_zero()) {
                        Move::Unadd23 { id: delta.clone() }
                    } else {
                        Move::Cancel23 { id: delta.clone() }
                    }
                }
                Move::Cancel23 { id } => {
                    Move::Add23 { delta: id.clone(), m: Multiplicities::new() }
                }
                Move::Uncancel12 { u, h, .. } => Move::Cancel12 { u: u.clone(), h: h.clone() },
                Move::Unadd23 { id } => {
                    let mut m = Multiplicities::new();
                    for other in cur.components() {
                        if other.id != *id {
                            let l = cur.lk(id, &other.id);
                            if !l.is_zero() {
                                m.insert(other.id.clone(), l);
                            }
                        }
                    }
                    Move::Add23 { delta: id.clone(), m }
                }
            };
            let (next, used) = Self::apply_one(&cur, mv).map_err(fail)?;
            let inverse = match (mv, used) {
                (Move::BlowUp { .. }, Some(id)) => Move::BlowDown { id },
                _ => inverse,
            };
            inv.push(inverse);
            cur = next;
        }
        inv.reverse();
        Ok(MoveScript(inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiagram::Component;

    fn base() -> Diagram {
        let mut d = Diagram::new();
        d.add_component(Component::dotted("u")).unwrap();
        d.add_component(Component::framed("h", -1)).unwrap();
        d.add_component(Component::framed("c", 2)).unwrap();
        d.set_lk("u", "h", BigInt::from(1)).unwrap();
        d.set_lk("h", "c", BigInt::from(-2)).unwrap();
        d
    }

    #[test]
    fn roundtrip_text() {
        let text = "\
twist +1 m=(c:1,h:-2)
blowup -1 m=(c:1) id=e1
blowdown e1
slide c over h s=-1
add23 delta=d1
cancel23 d1
";
        let s = MoveScript::parse(text).unwrap();
        assert_eq!(s.to_string(), text);
        let s2 = MoveScript::parse(&s.to_string()).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn replay_and_invert() {
        let d = base();
        let text = "\
blowup +1 m=(c:1,h:1)
slide c over h s=+1
twist -1 m=(c:2)
add23 delta=d9 m=(c:1)
";
        let s = MoveScript::parse(text).unwrap();
        let fwd = s.replay(&d).unwrap();
        let inv = s.invert_against(&d).unwrap();
        let back = inv.replay(&fwd).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn invert_cancel12() {
        let mut d = base();
        d.set_lk("c", "u", BigInt::from(2)).unwrap();
        // two slides of c over h strip its linking with u, then the pair cancels
        let s = MoveScript(vec![
            Move::Slide { i: "c".into(), j: "h".into(), s: -1 },
            Move::Slide { i: "c".into(), j: "h".into(), s: -1 },
            Move::Cancel12 { u: "u".into(), h: "h".into() },
        ]);
        let fwd = s.replay(&d).unwrap();
        assert_eq!(fwd.components().len(), 1);
        let inv = s.invert_against(&d).unwrap();
        let back = inv.replay(&fwd).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn atomic_failure() {
        let d = base();
        let s = MoveScript(vec![
            Move::Twist { eps: 1, m: [("c".to_string(), BigInt::from(1))].into() },
            Move::BlowDown { id: "h".into() }, // fails: no certificate
        ]);
        let err = s.replay(&d).unwrap_err();
        assert!(matches!(err, ScriptError::Replay { index: 1, .. }));
    }
}
