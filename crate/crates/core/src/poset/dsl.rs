//! The poset builder DSL: `chain:N`, `prod:N1xN2x…`, `bool:R`, `b3:N` and
//! `sum:P+<spec>+Q`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::Poset;

/// Abstract syntax of the builder DSL.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PosetSpec {
    /// Total order on `n` elements labelled `1..n`.
    Chain(usize),
    /// Componentwise order on `[n1] × … × [nr]`, labels `(i1,…,ir)`.
    Product(Vec<usize>),
    /// `Product([2; r])`.
    Boolean(usize),
    /// The `2n+6`-element lattice `B_{3,n}`.
    B3(usize),
    /// A `p`-chain below the inner poset, a `q`-chain above it.
    OrdinalSum(usize, Box<PosetSpec>, usize),
}

impl PosetSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            PosetSpec::Chain(0) => Err(Error::InvalidSpec("chain length must be ≥ 1".into())),
            PosetSpec::Product(ns) if ns.is_empty() => {
                Err(Error::InvalidSpec("product needs at least one factor".into()))
            }
            PosetSpec::Product(ns) if ns.contains(&0) => {
                Err(Error::InvalidSpec("product factors must be ≥ 1".into()))
            }
            PosetSpec::Boolean(0) => Err(Error::InvalidSpec("boolean rank must be ≥ 1".into())),
            PosetSpec::B3(0) => Err(Error::InvalidSpec("b3 parameter must be ≥ 1".into())),
            PosetSpec::OrdinalSum(_, inner, _) => inner.validate(),
            _ => Ok(()),
        }
    }

    /// Number of elements, without building the poset.
    pub fn element_count(&self) -> usize {
        match self {
            PosetSpec::Chain(n) => *n,
            PosetSpec::Product(ns) => ns.iter().product(),
            PosetSpec::Boolean(r) => 1usize << r,
            PosetSpec::B3(n) => 2 * n + 6,
            PosetSpec::OrdinalSum(p, inner, q) => p + inner.element_count() + q,
        }
    }

    /// `Some((m, n))` with `m ≥ n` when this is a product of exactly two
    /// chains.
    pub fn as_two_chain_product(&self) -> Option<(usize, usize)> {
        match self {
            PosetSpec::Product(ns) if ns.len() == 2 => Some((ns[0].max(ns[1]), ns[0].min(ns[1]))),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Poset> {
        self.validate()?;
        let poset = match self {
            PosetSpec::Chain(n) => build_chain(*n),
            PosetSpec::Product(ns) => build_product(ns),
            PosetSpec::Boolean(r) => build_product(&vec![2; *r]),
            PosetSpec::B3(n) => build_b3(*n),
            PosetSpec::OrdinalSum(..) => {
                let (p, core, q) = self.flatten_sum();
                build_ordinal_sum(p, &core.build()?, q)
            }
        }?;
        Ok(poset.with_spec(self.clone()))
    }

    /// Collapses nested ordinal sums into a single `(p, inner, q)`.
    fn flatten_sum(&self) -> (usize, &PosetSpec, usize) {
        match self {
            PosetSpec::OrdinalSum(p, inner, q) => {
                let (p2, core, q2) = inner.flatten_sum();
                (p + p2, core, q + q2)
            }
            other => (0, other, 0),
        }
    }
}

fn build_chain(n: usize) -> Result<Poset> {
    Poset::from_leq((1..=n).map(|i| i.to_string()).collect(), |i, j| i <= j)
}

fn build_product(ns: &[usize]) -> Result<Poset> {
    let total: usize = ns.iter().product();
    let coords: Vec<Vec<usize>> = (0..total)
        .map(|mut idx| {
            let mut c = vec![0; ns.len()];
            for (slot, &radix) in c.iter_mut().zip(ns).rev() {
                *slot = idx % radix + 1;
                idx /= radix;
            }
            c
        })
        .collect();
    let labels = coords.iter().map(|c| coordinate_label(c)).collect();
    Poset::from_leq(labels, |i, j| {
        coords[i].iter().zip(&coords[j]).all(|(a, b)| a <= b)
    })
}

pub(crate) fn coordinate_label(c: &[usize]) -> String {
    let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Coordinates of `B_{3,n}` inside `[n+1] × [2] × [2]`.
fn b3_elements(n: usize) -> Vec<(String, [usize; 3])> {
    let mut out = vec![
        ("a".to_string(), [n + 1, 2, 2]),
        ("b".to_string(), [n + 1, 1, 2]),
        ("c".to_string(), [n, 2, 2]),
        ("d".to_string(), [n + 1, 2, 1]),
        ("e".to_string(), [n + 1, 1, 1]),
        ("f".to_string(), [n, 2, 1]),
    ];
    for i in 1..=n {
        out.push((format!("{i}'"), [n + 1 - i, 1, 1]));
        out.push((i.to_string(), [n + 1 - i, 1, 2]));
    }
    out
}

/// Label of the image of a `B_{3,n}` element in `prod:(n+1)x2x2`.
#[cfg(test)]
pub(crate) fn b3_coordinate_label(n: usize, label: &str) -> String {
    let (_, c) = b3_elements(n)
        .into_iter()
        .find(|(l, _)| l == label)
        .expect("known B3 label");
    coordinate_label(&c)
}

fn build_b3(n: usize) -> Result<Poset> {
    let elems = b3_elements(n);
    let labels = elems.iter().map(|(l, _)| l.clone()).collect();
    Poset::from_leq(labels, |i, j| {
        elems[i].1.iter().zip(&elems[j].1).all(|(a, b)| a <= b)
    })
}

fn build_ordinal_sum(p: usize, inner: &Poset, q: usize) -> Result<Poset> {
    let k = inner.len();
    let mut labels: Vec<String> = (1..=p).map(|i| format!("lo{i}")).collect();
    labels.extend(inner.labels().iter().cloned());
    labels.extend((1..=q).map(|i| format!("hi{i}")));
    // block 0 = bottom chain, 1 = inner, 2 = top chain
    let block = |i: usize| {
        if i < p {
            0
        } else if i < p + k {
            1
        } else {
            2
        }
    };
    Poset::from_leq(labels, |i, j| match (block(i), block(j)) {
        (1, 1) => inner.leq(i - p, j - p),
        (bi, bj) if bi == bj => i <= j,
        (bi, bj) => bi < bj,
    })
}

impl fmt::Display for PosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetSpec::Chain(n) => write!(f, "chain:{n}"),
            PosetSpec::Product(ns) => {
                f.write_str("prod:")?;
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{n}")?;
                }
                Ok(())
            }
            PosetSpec::Boolean(r) => write!(f, "bool:{r}"),
            PosetSpec::B3(n) => write!(f, "b3:{n}"),
            PosetSpec::OrdinalSum(p, inner, q) => write!(f, "sum:{p}+{inner}+{q}"),
        }
    }
}

impl FromStr for PosetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s, pos: 0 };
        let spec = parser.spec()?;
        if parser.pos != s.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse {
            offset: start,
            message: "number out of range".into(),
        })
    }

    fn spec(&mut self) -> Result<PosetSpec> {
        let start = self.pos;
        let colon = self.src[start..]
            .find(':')
            .ok_or_else(|| self.error("expected `<kind>:`"))?;
        let kind = &self.src[start..start + colon];
        self.pos = start + colon + 1;
        match kind {
            "chain" => Ok(PosetSpec::Chain(self.number()?)),
            "bool" => Ok(PosetSpec::Boolean(self.number()?)),
            "b3" => Ok(PosetSpec::B3(self.number()?)),
            "prod" => {
                let mut ns = vec![self.number()?];
                while self.peek() == Some(b'x') {
                    self.pos += 1;
                    ns.push(self.number()?);
                }
                Ok(PosetSpec::Product(ns))
            }
            "sum" => {
                let p = self.number()?;
                self.expect(b'+')?;
                let inner = self.spec()?;
                self.expect(b'+')?;
                let q = self.number()?;
                Ok(PosetSpec::OrdinalSum(p, Box::new(inner), q))
            }
            _ => Err(Error::Parse {
                offset: start,
                message: format!("unknown poset kind `{kind}`"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!("chain:4".parse::<PosetSpec>().unwrap(), PosetSpec::Chain(4));
        assert_eq!(
            "prod:8x3".parse::<PosetSpec>().unwrap(),
            PosetSpec::Product(vec![8, 3])
        );
        assert_eq!(
            "sum:1+prod:8x3+2".parse::<PosetSpec>().unwrap(),
            PosetSpec::OrdinalSum(1, Box::new(PosetSpec::Product(vec![8, 3])), 2)
        );
        assert_eq!("b3:6".parse::<PosetSpec>().unwrap(), PosetSpec::B3(6));
        assert_eq!("bool:3".parse::<PosetSpec>().unwrap(), PosetSpec::Boolean(3));
    }

    #[test]
    fn parse_errors_report_offsets() {
        let offset = |s: &str| match s.parse::<PosetSpec>() {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{s}: unexpected {other:?}"),
        };
        assert_eq!(offset("chain:"), 6);
        assert_eq!(offset("prod:3x"), 7);
        assert_eq!(offset("tree:3"), 0);
        assert_eq!(offset("sum:1+chain:3"), 13);
        assert_eq!(offset("chain:3 "), 7);
        assert_eq!(offset("sum:1+cube:3+1"), 6);
        assert!(matches!("chain:0".parse::<PosetSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("prod:3x0".parse::<PosetSpec>(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn ordinal_sum_layout() {
        let p = "sum:2+prod:2x2+1".parse::<PosetSpec>().unwrap().build().unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.labels()[..2], ["lo1", "lo2"]);
        assert_eq!(p.labels()[6], "hi1");
        let lo2 = p.index_of("lo2").unwrap();
        let hi1 = p.index_of("hi1").unwrap();
        for i in 0..p.len() {
            if i != lo2 && p.label(i) != "lo1" {
                assert!(p.lt(lo2, i));
            }
            if i != hi1 {
                assert!(p.lt(i, hi1));
            }
        }
        let nested = "sum:1+sum:1+chain:2+1+0".parse::<PosetSpec>().unwrap();
        let q = nested.build().unwrap();
        assert_eq!(q.labels(), ["lo1", "lo2", "1", "2", "hi1"]);
        assert_eq!(q.spec(), Some(&nested));
    }

    fn arb_spec() -> impl Strategy<Value = PosetSpec> {
        let leaf = prop_oneof![
            (1usize..20).prop_map(PosetSpec::Chain),
            proptest::collection::vec(1usize..6, 1..4).prop_map(PosetSpec::Product),
            (1usize..5).prop_map(PosetSpec::Boolean),
            (1usize..9).prop_map(PosetSpec::B3),
        ];
        leaf.prop_recursive(2, 8, 1, |inner| {
            (0usize..4, inner, 0usize..4)
                .prop_map(|(p, s, q)| PosetSpec::OrdinalSum(p, Box::new(s), q))
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(text.parse::<PosetSpec>().unwrap(), spec.clone());
            prop_assert_eq!(spec.build().unwrap().len(), spec.element_count());
        }
    }
}
