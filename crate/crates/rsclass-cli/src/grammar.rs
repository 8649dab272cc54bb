//! Text grammar for group descriptors.
//!
//! ```text
//! descriptor := product ["@p=" INT]
//! product    := factor ("*" factor)*
//! factor     := base ["^" INT]                 direct power
//! base       := "Z" num                        cyclic
//!             | "Z" num ":" INT base           Z_n : H, H acting through a cyclic image of that order
//!             | "D" num | "D(" num ")"         dihedral of order 2n
//!             | "Dic" num | "Dic(" num ")"     dicyclic of order 4n
//!             | "Q8" | "A4" | "A5" | "S4" | "S5"
//!             | "(" product ")"
//! num        := INT | [INT] "p"                "p" is the prime
//! ```
//!
//! The groups that carry the classification keep their conventional generator
//! names: `Zp*Z2^2` on `t,x,y`, `D(2p)` on `r,s`, `Z4p` on `a,b`, `Zp:kZ4` on
//! `a,b`, `Zp*D4` on `a,r,s`, `D3*Dp` on `r,s,R,S` and `Zp:3A4` on `a,x,y,z`.

use rsclass::group::{
    alternating4, alternating5, couplings, cyclic, cyclic_semidirect_named, d3_times_dp, dicyclic, dihedral, dihedral_2p,
    direct, quaternion, symmetric4, symmetric5, z4p_split, zp_sd3_a4, zp_sd_z4, zp_times_d4, zp_times_v4, Group,
};
use rsclass::util::{is_prime, lcm, mult_order};
use rsclass::{Error, Result};

pub const GROUP_GRAMMAR: &str = "\
group descriptors:
  Zn            cyclic of order n          Dn, D(n)     dihedral of order 2n
  Dic(n)        dicyclic of order 4n       Q8 A4 A5 S4 S5
  G*H           direct product             G^k          k-fold direct power
  Zn:kH         Z_n : H with H acting through a cyclic image of order k (n prime)
  (G)           grouping
  n may be an integer, p, or kp; a trailing @p=P fixes the prime
  examples: Zp*Z2^2  D(2p)  Z4p  Zp:2Z4  Zp*D4  D3*Dp  Zp:3A4@p=7";

/// Splits an optional `@p=P` suffix.
pub fn split_prime(text: &str) -> Result<(&str, Option<u32>)> {
    match text.split_once('@') {
        None => Ok((text.trim(), None)),
        Some((body, tail)) => {
            let v = tail
                .trim()
                .strip_prefix("p=")
                .and_then(|v| v.parse::<u32>().ok())
                .ok_or_else(|| Error::Descriptor(format!("expected @p=<prime>, got @{tail}")))?;
            Ok((body.trim(), Some(v)))
        }
    }
}

/// Builds the group named by `text` for the prime `p`.
pub fn parse_group(text: &str, p: u32) -> Result<Group> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(g) = named(&compact, p)? {
        return Ok(g);
    }
    let mut parser = Parser { s: compact.as_bytes(), i: 0, p };
    let g = parser.product()?;
    if parser.i != parser.s.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(g)
}

fn named(s: &str, p: u32) -> Result<Option<Group>> {
    Ok(Some(match s {
        "Zp*Z2^2" | "Zp*Z2*Z2" => zp_times_v4(p)?,
        "D(2p)" | "D2p" => dihedral_2p(p)?,
        "Z4p" => z4p_split(p)?,
        "Zp:2Z4" => zp_sd_z4(p, 2)?,
        "Zp:4Z4" => zp_sd_z4(p, 4)?,
        "Zp*D4" => zp_times_d4(p)?,
        "D3*Dp" | "D3*D(p)" => d3_times_dp(p)?,
        "Zp:3A4" => zp_sd3_a4(p)?,
        _ => return Ok(None),
    }))
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    p: u32,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let text = String::from_utf8_lossy(self.s);
        Error::Descriptor(format!("{what} at position {} of {text:?}", self.i))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<u32> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i]).ok()?.parse().ok()
    }

    fn num(&mut self) -> Result<u32> {
        let k = self.int();
        if self.eat("p") {
            return Ok(k.unwrap_or(1) * self.p);
        }
        k.ok_or_else(|| self.error("expected a number"))
    }

    fn product(&mut self) -> Result<Group> {
        let mut g = self.factor()?;
        while self.eat("*") {
            let h = self.factor()?;
            g = direct(&g, &h)?;
        }
        Ok(g)
    }

    fn factor(&mut self) -> Result<Group> {
        let g = self.base()?;
        if !self.eat("^") {
            return Ok(g);
        }
        let k = self.int().filter(|&k| k >= 1).ok_or_else(|| self.error("expected a positive exponent"))?;
        let mut out = g.clone();
        for _ in 1..k {
            out = direct(&out, &g)?;
        }
        Ok(out)
    }

    fn bracketed_num(&mut self) -> Result<u32> {
        if self.eat("(") {
            let n = self.num()?;
            if !self.eat(")") {
                return Err(self.error("expected )"));
            }
            Ok(n)
        } else {
            self.num()
        }
    }

    fn base(&mut self) -> Result<Group> {
        for (lit, build) in [
            ("Q8", quaternion as fn() -> Result<Group>),
            ("A4", alternating4),
            ("A5", alternating5),
            ("S4", symmetric4),
            ("S5", symmetric5),
        ] {
            if self.eat(lit) {
                return build();
            }
        }
        if self.eat("(") {
            let g = self.product()?;
            if !self.eat(")") {
                return Err(self.error("expected )"));
            }
            return Ok(g);
        }
        if self.eat("Dic") {
            return dicyclic(self.bracketed_num()?);
        }
        if self.eat("D") {
            return dihedral(self.bracketed_num()?);
        }
        if self.eat("Z") {
            let n = self.num()?;
            if !self.eat(":") {
                return cyclic(n);
            }
            let k = self.int().ok_or_else(|| self.error("expected the image order after :"))?;
            let h = self.base()?;
            return split_extension(n, k, &h);
        }
        Err(self.error("expected a group"))
    }
}

/// `Z_n : H` with the unique (up to equivalence) coupling of image order `k`.
fn split_extension(n: u32, k: u32, h: &Group) -> Result<Group> {
    if !is_prime(n as u64) {
        return Err(Error::Descriptor(format!("the normal factor Z{n} must have prime order")));
    }
    let fitting: Vec<Vec<u64>> = couplings(h, n)
        .into_iter()
        .filter(|units| units.iter().map(|&u| mult_order(u, n as u64).unwrap_or(1)).fold(1, lcm) == k as u64)
        .collect();
    match fitting.as_slice() {
        [units] => {
            // the normal generator takes the first name the complement leaves free
            let taken = h.generator_names();
            let fresh = ["a", "u", "v", "w"].into_iter().find(|c| !taken.iter().any(|t| t == c)).unwrap_or("n");
            let mut names = vec![fresh];
            names.extend(taken.iter().map(String::as_str));
            cyclic_semidirect_named(n, h, units, &names)
        }
        [] => Err(Error::Descriptor(format!("no action of the given group on Z{n} with image of order {k}"))),
        _ => Err(Error::Descriptor(format!(
            "{} inequivalent actions on Z{n} with image of order {k}; use a named group",
            fitting.len()
        ))),
    }
}
