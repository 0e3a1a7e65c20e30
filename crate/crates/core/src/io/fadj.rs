use std::fmt::Write as _;
use std::sync::Arc;

use crate::category::{FinCat, Mor, Obj};
use crate::error::Result;
use crate::functor::FunctorData;
use crate::transfer::{AdjunctionData, EquivalenceClaims};

use super::lex::{self, at, diag, end_of, shape, Token};

/// Parses an adjunction `F ⊣ G` between the presented categories `left`
/// (source of `F`) and `right`.
///
/// ```text
/// fadj 1
/// left-object X Y        # F(X) = Y
/// left-morphism f g      # F(f) = g
/// right-object Y X
/// right-morphism g f
/// unit X m               # η_X = m
/// counit Y m             # ε_Y = m
/// equivalence unit X     # η_X claimed to be a weak equivalence
/// ```
///
/// Unlisted identities go to identities.
pub fn parse_adjunction(text: &str, left: &Arc<FinCat>, right: &Arc<FinCat>) -> Result<(AdjunctionData, EquivalenceClaims)> {
    let lines = lex::lines(text);
    lex::header(&lines, "fadj", text)?;
    let (c, d) = (&**left, &**right);
    let mut fo: Vec<Option<Obj>> = vec![None; c.object_count()];
    let mut fm: Vec<Option<Mor>> = vec![None; c.morphism_count()];
    let mut go: Vec<Option<Obj>> = vec![None; d.object_count()];
    let mut gm: Vec<Option<Mor>> = vec![None; d.morphism_count()];
    let mut unit: Vec<Option<Mor>> = vec![None; c.object_count()];
    let mut counit: Vec<Option<Mor>> = vec![None; d.object_count()];
    let mut claims = EquivalenceClaims::default();

    for line in &lines[1..] {
        let head = &line.tokens[0];
        let n = line.number;
        match head.text {
            "left-object" => {
                let t = shape(line, &[None, None, None], "object id")?;
                let x = object(c, &t[1], n)?;
                set(&mut fo[x.index()], object(d, &t[2], n)?, &t[1], n)?;
            }
            "right-object" => {
                let t = shape(line, &[None, None, None], "object id")?;
                let y = object(d, &t[1], n)?;
                set(&mut go[y.index()], object(c, &t[2], n)?, &t[1], n)?;
            }
            "left-morphism" => {
                let t = shape(line, &[None, None, None], "morphism id")?;
                let f = morphism(c, &t[1], n)?;
                set(&mut fm[f.index()], morphism(d, &t[2], n)?, &t[1], n)?;
            }
            "right-morphism" => {
                let t = shape(line, &[None, None, None], "morphism id")?;
                let g = morphism(d, &t[1], n)?;
                set(&mut gm[g.index()], morphism(c, &t[2], n)?, &t[1], n)?;
            }
            "unit" => {
                let t = shape(line, &[None, None, None], "id")?;
                let x = object(c, &t[1], n)?;
                set(&mut unit[x.index()], morphism(c, &t[2], n)?, &t[1], n)?;
            }
            "counit" => {
                let t = shape(line, &[None, None, None], "id")?;
                let y = object(d, &t[1], n)?;
                set(&mut counit[y.index()], morphism(d, &t[2], n)?, &t[1], n)?;
            }
            "equivalence" => {
                let t = shape(line, &[None, None, None], "id")?;
                match t[1].text {
                    "unit" => claims.unit.push(object(c, &t[2], n)?),
                    "counit" => claims.counit.push(object(d, &t[2], n)?),
                    other => {
                        return Err(diag(n, t[1].column, format!("unexpected `{other}`"), Some("`unit` or `counit`")))
                    }
                }
            }
            other => {
                return Err(diag(
                    n,
                    head.column,
                    format!("unknown keyword `{other}`"),
                    Some("left-object, left-morphism, right-object, right-morphism, unit, counit or equivalence"),
                ))
            }
        }
    }

    let end = end_of(text);
    let fo = complete(fo, |x| format!("left adjoint does not map object `{}`", c.object_name(Obj(x as u32))), end)?;
    let go = complete(go, |y| format!("right adjoint does not map object `{}`", d.object_name(Obj(y as u32))), end)?;
    let fm = identities_default(c, d, fm, &fo, "left", end)?;
    let gm = identities_default(d, c, gm, &go, "right", end)?;
    let unit = complete(unit, |x| format!("no unit component at `{}`", c.object_name(Obj(x as u32))), end)?;
    let counit = complete(counit, |y| format!("no counit component at `{}`", d.object_name(Obj(y as u32))), end)?;
    let adj = AdjunctionData {
        left: FunctorData::new(left.clone(), right.clone(), fo, fm)?,
        right: FunctorData::new(right.clone(), left.clone(), go, gm)?,
        unit,
        counit,
    };
    Ok((adj, claims))
}

fn object(c: &FinCat, t: &Token, line: usize) -> Result<Obj> {
    c.object(t.text)
        .ok_or_else(|| at(t, line, format!("unknown object `{}`", t.text)))
}

fn morphism(c: &FinCat, t: &Token, line: usize) -> Result<Mor> {
    c.morphism(t.text)
        .ok_or_else(|| at(t, line, format!("unknown morphism `{}`", t.text)))
}

fn set<T>(slot: &mut Option<T>, value: T, t: &Token, line: usize) -> Result<()> {
    if slot.is_some() {
        return Err(at(t, line, format!("`{}` given twice", t.text)));
    }
    *slot = Some(value);
    Ok(())
}

fn complete<T>(v: Vec<Option<T>>, message: impl Fn(usize) -> String, end: usize) -> Result<Vec<T>> {
    v.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| diag(end, 1, message(i), None)))
        .collect()
}

fn identities_default(
    c: &FinCat,
    d: &FinCat,
    map: Vec<Option<Mor>>,
    objects: &[Obj],
    side: &str,
    end: usize,
) -> Result<Vec<Mor>> {
    map.into_iter()
        .enumerate()
        .map(|(i, g)| {
            let f = Mor(i as u32);
            match g {
                Some(g) => Ok(g),
                None if c.is_identity(f) => Ok(d.identity(objects[c.dom(f).index()])),
                None => Err(diag(
                    end,
                    1,
                    format!("{side} adjoint does not map morphism `{}`", c.morphism_name(f)),
                    None,
                )),
            }
        })
        .collect()
}

/// Canonical text of an adjunction; identities sent to identities are
/// omitted.
pub fn to_fadj(adj: &AdjunctionData, claims: &EquivalenceClaims) -> String {
    let mut out = String::from("fadj 1\n");
    for (side, functor) in [("left", &adj.left), ("right", &adj.right)] {
        let (c, d) = (&*functor.source, &*functor.target);
        for x in c.objects() {
            writeln!(out, "{side}-object {} {}", c.object_name(x), d.object_name(functor.obj(x))).unwrap();
        }
        for f in c.morphisms() {
            let g = functor.mor(f);
            if c.is_identity(f) && g == d.identity(functor.obj(c.dom(f))) {
                continue;
            }
            writeln!(out, "{side}-morphism {} {}", c.morphism_name(f), d.morphism_name(g)).unwrap();
        }
    }
    let (c, d) = (&*adj.left.source, &*adj.left.target);
    for x in c.objects() {
        writeln!(out, "unit {} {}", c.object_name(x), c.morphism_name(adj.unit[x.index()])).unwrap();
    }
    for y in d.objects() {
        writeln!(out, "counit {} {}", d.object_name(y), d.morphism_name(adj.counit[y.index()])).unwrap();
    }
    for &x in &claims.unit {
        writeln!(out, "equivalence unit {}", c.object_name(x)).unwrap();
    }
    for &y in &claims.counit {
        writeln!(out, "equivalence counit {}", d.object_name(y)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PowerCategory;
    use crate::error::Error;
    use crate::transfer::{diagonal_meet_adjunction, validate_adjunction};

    #[test]
    fn diagonal_meet_round_trip() {
        let p = Arc::new(FinCat::from_preorder(&["0", "1"], |i, j| i <= j).unwrap());
        let sq = PowerCategory::new(p.clone(), 2).unwrap();
        let adj = diagonal_meet_adjunction(&p, &sq).unwrap();
        let claims = EquivalenceClaims {
            unit: vec![Obj(1)],
            counit: vec![],
        };
        let text = to_fadj(&adj, &claims);
        let (back, back_claims) = parse_adjunction(&text, &p, &sq.category).unwrap();
        assert_eq!(back.left.object_map, adj.left.object_map);
        assert_eq!(back.right.morphism_map, adj.right.morphism_map);
        assert_eq!(back.unit, adj.unit);
        assert_eq!(back.counit, adj.counit);
        assert_eq!(back_claims, claims);
        assert!(validate_adjunction(&back).unwrap().is_empty());
    }

    #[test]
    fn missing_unit_is_reported_at_end() {
        let p = Arc::new(FinCat::from_preorder(&["0"], |_, _| true).unwrap());
        let text = "fadj 1\nleft-object 0 0\nright-object 0 0\n";
        match parse_adjunction(text, &p, &p) {
            Err(Error::Parse(d)) => {
                assert_eq!(d.line, 4);
                assert_eq!(d.message, "no unit component at `0`");
            }
            other => panic!("{other:?}"),
        }
    }
}
