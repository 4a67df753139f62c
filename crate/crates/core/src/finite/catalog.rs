//! Built-in example loops.
//!
//! | name       | order | construction                                              |
//! |------------|-------|-----------------------------------------------------------|
//! | `Z_n`      | n≤16  | addition mod n                                            |
//! | `V4`       | 4     | Klein four-group `Z_2 × Z_2`                              |
//! | `S3`, `D4` | 6, 8  | dihedral groups `⟨r, s | rᵐ, s², (rs)²⟩`, m = 3, 4          |
//! | `Q8`       | 8     | quaternion units `±1, ±i, ±j, ±k`                         |
//! | `O16`      | 16    | octonion units `±e₀…±e₇`, `e_k e_{k+1} = e_{k+3}` (mod 7)  |
//! | `M(S3,2)`  | 12    | Chein double of `S3`                                      |
//! | `CML81`    | 81    | `Z₃⁴` with a twisted fourth coordinate                    |
//! | `LS5`      | 5     | a fixed nonassociative loop of order 5                    |

use super::{AxiomReport, CayleyLoop, LoopError};

pub struct CatalogEntry {
    pub name: &'static str,
    pub order: usize,
    pub recipe: &'static str,
    /// Flag vector the table is documented to have.
    pub flags: AxiomReport,
    build: fn() -> CayleyLoop,
}

impl CatalogEntry {
    pub fn build(&self) -> CayleyLoop {
        (self.build)()
    }
}

const fn flags(associative: bool, commutative: bool, moufang: bool) -> AxiomReport {
    AxiomReport {
        quasigroup: true,
        identity: true,
        associative,
        commutative,
        moufang,
    }
}

const ABELIAN: AxiomReport = flags(true, true, true);
const GROUP: AxiomReport = flags(true, false, true);

macro_rules! cyclic_entries {
    ($($n:literal),*) => {
        [$(CatalogEntry {
            name: concat!("Z_", $n),
            order: $n,
            recipe: "addition modulo n",
            flags: ABELIAN,
            build: || cyclic($n),
        }),*]
    };
}

static CYCLIC: [CatalogEntry; 16] =
    cyclic_entries!(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16);

static OTHERS: [CatalogEntry; 8] = [
    CatalogEntry {
        name: "V4",
        order: 4,
        recipe: "Z_2 x Z_2",
        flags: ABELIAN,
        build: klein,
    },
    CatalogEntry {
        name: "S3",
        order: 6,
        recipe: "dihedral group of order 6",
        flags: GROUP,
        build: || dihedral("S3", 3),
    },
    CatalogEntry {
        name: "D4",
        order: 8,
        recipe: "dihedral group of order 8",
        flags: GROUP,
        build: || dihedral("D4", 4),
    },
    CatalogEntry {
        name: "Q8",
        order: 8,
        recipe: "quaternion units under multiplication",
        flags: GROUP,
        build: quaternions,
    },
    CatalogEntry {
        name: "O16",
        order: 16,
        recipe: "octonion units under multiplication",
        flags: flags(false, false, true),
        build: octonions,
    },
    CatalogEntry {
        name: "M(S3,2)",
        order: 12,
        recipe: "Chein double of S3",
        flags: flags(false, false, true),
        build: chein_s3,
    },
    CatalogEntry {
        name: "CML81",
        order: 81,
        recipe: "Z_3^4 with x*y = x + y + (0,0,0,(x3-y3)(x1y2-x2y1))",
        flags: flags(false, true, true),
        build: cml81,
    },
    CatalogEntry {
        name: "LS5",
        order: 5,
        recipe: "fixed nonassociative Latin square with identity",
        flags: flags(false, false, false),
        build: ls5,
    },
];

pub fn catalog_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    CYCLIC.iter().chain(OTHERS.iter())
}

/// Looks up a catalog loop. `Z4` is accepted as an alias of `Z_4`.
pub fn catalog(name: &str) -> Result<CayleyLoop, LoopError> {
    let canonical = match name.strip_prefix('Z') {
        Some(rest) if !rest.starts_with('_') && rest.parse::<usize>().is_ok() => {
            format!("Z_{rest}")
        }
        _ => name.to_owned(),
    };
    catalog_entries()
        .find(|e| e.name == canonical)
        .map(CatalogEntry::build)
        .ok_or_else(|| LoopError::UnknownCatalog(name.to_owned()))
}

fn build(name: &str, names: Vec<String>, f: impl Fn(usize, usize) -> usize) -> CayleyLoop {
    CayleyLoop::from_fn(name, names, f).expect("catalog table is a loop")
}

fn cyclic(n: usize) -> CayleyLoop {
    build(&format!("Z_{n}"), super::index_names(n), |a, b| (a + b) % n)
}

fn klein() -> CayleyLoop {
    let names = ["e", "a", "b", "c"].map(String::from).to_vec();
    build("V4", names, |a, b| a ^ b)
}

/// `r^k s^e` is stored at index `e·m + k`.
fn dihedral(name: &str, m: usize) -> CayleyLoop {
    let power = |k: usize| match k {
        0 => String::new(),
        1 => "r".to_owned(),
        _ => format!("r{k}"),
    };
    let names = (0..2 * m)
        .map(|i| {
            let (e, k) = (i / m, i % m);
            match (e, k) {
                (0, 0) => "e".to_owned(),
                (0, _) => power(k),
                _ => format!("{}s", power(k)),
            }
        })
        .collect();
    build(name, names, |x, y| {
        let (e1, k1) = (x / m, x % m);
        let (e2, k2) = (y / m, y % m);
        // s r^k = r^{-k} s
        let k = if e1 == 0 { k1 + k2 } else { k1 + m - k2 };
        ((e1 + e2) % 2) * m + k % m
    })
}

/// Signed unit `±e_k` is stored at index `2k + (negative as usize)`.
fn signed_units(
    name: &str,
    labels: &[&str],
    unit_product: impl Fn(usize, usize) -> (bool, usize),
) -> CayleyLoop {
    let names = labels
        .iter()
        .flat_map(|l| [l.to_string(), format!("-{l}")])
        .collect();
    build(name, names, |x, y| {
        let (neg, k) = unit_product(x / 2, y / 2);
        let sign = (x % 2) ^ (y % 2) ^ neg as usize;
        2 * k + sign
    })
}

fn quaternions() -> CayleyLoop {
    // i j = k, j k = i, k i = j
    signed_units("Q8", &["1", "i", "j", "k"], |a, b| match (a, b) {
        (0, _) => (false, b),
        (_, 0) => (false, a),
        _ if a == b => (true, 0),
        _ => {
            let c = 6 - a - b;
            ((b + 3 - a) % 3 != 1, c)
        }
    })
}

/// Oriented lines of the Fano plane: `e_a e_b = e_c` for `(a, b, c)` and its
/// cyclic shifts.
const FANO: [[usize; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

fn octonion_units(a: usize, b: usize) -> (bool, usize) {
    if a == 0 {
        return (false, b);
    }
    if b == 0 {
        return (false, a);
    }
    if a == b {
        return (true, 0);
    }
    for line in FANO {
        for shift in 0..3 {
            let (x, y, z) = (line[shift], line[(shift + 1) % 3], line[(shift + 2) % 3]);
            if (a, b) == (x, y) {
                return (false, z);
            }
            if (a, b) == (y, x) {
                return (true, z);
            }
        }
    }
    unreachable!("every pair of distinct imaginary units lies on a line")
}

fn octonions() -> CayleyLoop {
    let labels = ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"];
    signed_units("O16", &labels, octonion_units)
}

/// Chein loop `M(G, 2) = G ∪ Gu` with
/// `g·h = gh`, `g·hu = (hg)u`, `gu·h = (gh⁻¹)u`, `gu·hu = h⁻¹g`.
fn chein_s3() -> CayleyLoop {
    let g = dihedral("S3", 3);
    let n = g.order();
    let e = g.identity_index();
    let inv = |x: usize| g.left_div(x, e);
    let names = g
        .names()
        .iter()
        .cloned()
        .chain(g.names().iter().map(|s| {
            if s == "e" {
                "u".to_owned()
            } else {
                format!("{s}u")
            }
        }))
        .collect();
    build("M(S3,2)", names, |x, y| {
        let (gx, ux) = (x % n, x / n);
        let (gy, uy) = (y % n, y / n);
        match (ux, uy) {
            (0, 0) => g.product(gx, gy),
            (0, 1) => n + g.product(gy, gx),
            (1, 0) => n + g.product(gx, inv(gy)),
            _ => g.product(inv(gy), gx),
        }
    })
}

/// The commutative Moufang loop of order 81 on `Z₃⁴`.
fn cml81() -> CayleyLoop {
    let digits = |x: usize| [x / 27, (x / 9) % 3, (x / 3) % 3, x % 3];
    let names = (0..81)
        .map(|x| digits(x).iter().map(|d| d.to_string()).collect())
        .collect();
    build("CML81", names, |x, y| {
        let [x1, x2, x3, x4] = digits(x);
        let [y1, y2, y3, y4] = digits(y);
        let twist = ((x3 + 3 - y3) * (x1 * y2 + 6 - x2 * y1)) % 3;
        ((x1 + y1) % 3) * 27 + ((x2 + y2) % 3) * 9 + ((x3 + y3) % 3) * 3 + (x4 + y4 + twist) % 3
    })
}

fn ls5() -> CayleyLoop {
    let rows = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    CayleyLoop::from_table("LS5", super::index_names(5), &rows).expect("LS5 is a loop")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_with_documented_flags() {
        for entry in catalog_entries() {
            let l = entry.build();
            assert_eq!(l.order(), entry.order, "{}", entry.name);
            assert_eq!(l.name(), entry.name);
            assert_eq!(l.check_axioms(), entry.flags, "{}", entry.name);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(catalog("Z_2").unwrap().order(), 2);
        assert_eq!(catalog("Z4").unwrap().name(), "Z_4");
        assert!(matches!(catalog("Z_17"), Err(LoopError::UnknownCatalog(_))));
        assert!(matches!(catalog("nope"), Err(LoopError::UnknownCatalog(_))));
    }

    #[test]
    fn quaternion_relations() {
        let q = catalog("Q8").unwrap();
        let at = |s: &str| q.element_by_name(s).unwrap();
        let name = |x| q.element_name(x).to_owned();
        assert_eq!(name(q.product(at("i"), at("j"))), "k");
        assert_eq!(name(q.product(at("j"), at("i"))), "-k");
        assert_eq!(name(q.product(at("j"), at("k"))), "i");
        assert_eq!(name(q.product(at("k"), at("i"))), "j");
        assert_eq!(name(q.product(at("k"), at("k"))), "-1");
    }

    #[test]
    fn octonion_units_square_to_minus_one() {
        let o = catalog("O16").unwrap();
        let minus_one = o.element_by_name("-1").unwrap();
        for k in 1..8 {
            let e = o.element_by_name(&format!("e{k}")).unwrap();
            assert_eq!(o.product(e, e), minus_one);
        }
    }

    #[test]
    fn cml81_is_exponent_three() {
        let l = catalog("CML81").unwrap();
        let e = l.identity_index();
        assert_eq!(l.element_name(e), "0000");
        assert!(l.elements().all(|x| l.product(l.product(x, x), x) == e));
    }
}
