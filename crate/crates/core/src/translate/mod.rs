//! The definable-formula catalog and the ring-to-group sentence translations.
//!
//! Catalog formulas are built from a kind plus a parameter list; the
//! parameters become the formula's free variables, and integer parameters
//! (the prime, exponents, indices) are baked into the syntax.

pub mod catalog;
pub mod group_defs;
pub mod names;
pub mod relativize;
pub mod ring_defs;
pub mod terms;
pub mod translation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SyntaxError;
use crate::formulas::{Formula, PredVar, Var};
use names::Names;

pub use translation::{translate_via_basic_subgroup, translate_via_endomorphisms};

/// One actual parameter of a catalog formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Param {
    Obj(Var),
    Pred(PredVar),
    Int(u64),
}

impl Param {
    pub fn obj(name: &str) -> Self {
        Param::Obj(Var::new(name))
    }

    pub fn pred(name: &str, arity: usize) -> Self {
        Param::Pred(PredVar::new(name, arity))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Obj(v) => write!(f, "{v}"),
            Param::Pred(p) => write!(f, "{p}"),
            Param::Int(n) => write!(f, "{n}"),
        }
    }
}

/// The expected shape of one parameter position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Obj,
    Pred(usize),
    Int,
    /// One or more object variables; only valid as the last position.
    Objs,
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamKind::Obj => f.write_str("an object variable"),
            ParamKind::Pred(k) => write!(f, "a predicate variable of arity {k}"),
            ParamKind::Int => f.write_str("a positive integer"),
            ParamKind::Objs => f.write_str("object variables"),
        }
    }
}

/// Parameters after checking them against a signature.
struct Args<'a> {
    params: &'a [Param],
}

impl<'a> Args<'a> {
    fn check(kind: &str, signature: &[ParamKind], params: &'a [Param]) -> Result<Self, SyntaxError> {
        let variadic = signature.last() == Some(&ParamKind::Objs);
        let fixed = signature.len() - usize::from(variadic);
        let count_ok = if variadic { params.len() > fixed } else { params.len() == fixed };
        if !count_ok {
            return Err(SyntaxError::ParamCount {
                kind: kind.to_string(),
                expected: signature.len(),
                got: params.len(),
            });
        }
        for (index, param) in params.iter().enumerate() {
            let expected = signature[index.min(signature.len() - 1)];
            let ok = match (expected, param) {
                (ParamKind::Obj | ParamKind::Objs, Param::Obj(_)) => true,
                (ParamKind::Pred(k), Param::Pred(p)) => p.arity == k,
                (ParamKind::Int, Param::Int(n)) => *n > 0,
                _ => false,
            };
            if !ok {
                return Err(SyntaxError::ParamType { kind: kind.to_string(), index, expected: expected.to_string() });
            }
        }
        Ok(Args { params })
    }

    fn names(&self) -> Names {
        let mut names = Names::new();
        for p in self.params {
            match p {
                Param::Obj(v) => names.reserve(v.name()),
                Param::Pred(q) => names.reserve(&q.name),
                Param::Int(_) => {}
            }
        }
        names
    }

    fn obj(&self, i: usize) -> &'a Var {
        match &self.params[i] {
            Param::Obj(v) => v,
            _ => unreachable!("checked against the signature"),
        }
    }

    fn pred(&self, i: usize) -> &'a PredVar {
        match &self.params[i] {
            Param::Pred(p) => p,
            _ => unreachable!("checked against the signature"),
        }
    }

    fn int(&self, i: usize) -> u64 {
        match &self.params[i] {
            Param::Int(n) => *n,
            _ => unreachable!("checked against the signature"),
        }
    }

    fn objs_from(&self, i: usize) -> Vec<Var> {
        (i..self.params.len()).map(|j| self.obj(j).clone()).collect()
    }
}

macro_rules! kind_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal,)* }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $($variant,)*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text,)*
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = SyntaxError;

            fn from_str(s: &str) -> Result<Self, SyntaxError> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|k| k.name().eq_ignore_ascii_case(s))
                    .ok_or_else(|| SyntaxError::UnknownKind(s.to_string()))
            }
        }
    };
}

kind_enum! {
    /// Second-order group formulas of the catalog.
    GroupDefFormulaKind {
        Gr => "Gr",
        Cycl => "Cycl",
        DCycl => "DCycl",
        GrA => "Gr_a",
        OrdLeq => "OrdLeq",
        OrdLt => "OrdLt",
        OrdEq => "OrdEq",
        GOrdA => "GOrd_a",
        MultA => "Mult_a",
        Serv => "Serv",
        Fd => "FD",
        Base => "Base",
        D => "D",
        Exept => "Exept",
        Endom => "Endom",
        HomB => "Hom_B",
        EndomB => "Endom_B",
        PhiExt => "PhiExt",
    }
}

kind_enum! {
    /// First-order ring formulas of the catalog.
    RingDefFormulaKind {
        Idem => "Idem",
        IdemStar => "IdemStar",
        IdemStarI => "IdemStar_i",
        Comp => "Comp",
        CardL => "Card_l",
        CardLt => "CardLt",
        CardEq => "CardEq",
        Fin => "Fin",
        Inf => "Inf",
        Count => "Count",
        IdemOmega => "IdemOmega",
        PhiN => "Phi_n",
        PsiN => "Psi_n",
        OrdLeqCenter => "OrdLeqCenter",
        OrdRho => "Ord_rho",
        MaxOrdRho => "MaxOrd_rho",
        RestRho => "Rest_rho",
        MaxRestRho => "MaxRest_rho",
        BaseBar => "BaseBar",
        BaseEndo => "BaseEndo",
        Psi2 => "Psi2",
        Psi3 => "Psi3",
        Psi4 => "Psi4",
        Psi5 => "Psi5",
    }
}

use ParamKind::{Int, Obj, Objs, Pred};

impl GroupDefFormulaKind {
    pub fn signature(self) -> &'static [ParamKind] {
        use GroupDefFormulaKind as K;
        match self {
            K::Gr | K::Cycl | K::DCycl => &[Pred(1)],
            K::GrA | K::GOrdA => &[Pred(1), Obj],
            K::OrdLeq | K::OrdLt | K::OrdEq => &[Obj, Obj],
            K::MultA => &[Int, Obj, Obj, Obj],
            K::Serv | K::Fd | K::Base | K::D => &[Int, Pred(1)],
            K::Exept => &[Int],
            K::Endom => &[Pred(2)],
            K::HomB => &[Pred(1), Pred(2)],
            K::EndomB => &[Int, Pred(1), Pred(2)],
            K::PhiExt => &[Int, Pred(1), Pred(2), Obj, Obj],
        }
    }

    /// Conventional parameters for the prime `prime`, used by the catalog export.
    pub fn default_params(self, prime: u64) -> Vec<Param> {
        use GroupDefFormulaKind as K;
        let p = Param::Int(prime);
        match self {
            K::Gr | K::Cycl | K::DCycl => vec![Param::pred("P", 1)],
            K::GrA | K::GOrdA => vec![Param::pred("P", 1), Param::obj("a")],
            K::OrdLeq | K::OrdLt | K::OrdEq => vec![Param::obj("a1"), Param::obj("a2")],
            K::MultA => vec![p, Param::obj("a"), Param::obj("x"), Param::obj("b")],
            K::Serv | K::Fd | K::Base | K::D => vec![p, Param::pred("P", 1)],
            K::Exept => vec![p],
            K::Endom => vec![Param::pred("P", 2)],
            K::HomB => vec![Param::pred("B", 1), Param::pred("F", 2)],
            K::EndomB => vec![p, Param::pred("B", 1), Param::pred("Phi", 2)],
            K::PhiExt => vec![p, Param::pred("B", 1), Param::pred("Phi", 2), Param::obj("a"), Param::obj("b")],
        }
    }
}

impl RingDefFormulaKind {
    pub fn signature(self) -> &'static [ParamKind] {
        use RingDefFormulaKind as K;
        match self {
            K::Idem | K::IdemStar | K::Fin | K::Inf | K::Count | K::BaseBar | K::BaseEndo => &[Obj],
            K::IdemStarI => &[Int, Int, Obj],
            K::Comp => &[Int, Objs],
            K::CardL => &[Int, Int, Objs],
            K::CardLt | K::CardEq | K::OrdLeqCenter | K::IdemOmega => &[Obj, Obj],
            K::OrdRho | K::MaxOrdRho | K::RestRho | K::MaxRestRho => &[Obj, Obj],
            K::PhiN => &[Int],
            K::PsiN => &[Int, Int],
            K::Psi2 | K::Psi3 => &[Int],
            K::Psi4 | K::Psi5 => &[],
        }
    }

    /// Whether the formula is a sentence for every choice of parameters.
    pub fn is_sentence(self) -> bool {
        self.signature().iter().all(|k| *k == Int)
    }

    /// Conventional parameters for the prime `prime`, used by the catalog export.
    pub fn default_params(self, prime: u64) -> Vec<Param> {
        use RingDefFormulaKind as K;
        let p = Param::Int(prime);
        match self {
            K::Idem | K::IdemStar | K::Fin | K::Inf | K::Count => vec![Param::obj("rho")],
            K::BaseBar | K::BaseEndo => vec![Param::obj("phi")],
            K::IdemStarI => vec![p, Param::Int(1), Param::obj("rho")],
            K::Comp => vec![p, Param::obj("rho1"), Param::obj("rho2")],
            K::CardL => vec![p, Param::Int(1), Param::obj("rho1"), Param::obj("rho2")],
            K::CardLt | K::CardEq | K::OrdLeqCenter => vec![Param::obj("rho1"), Param::obj("rho2")],
            K::IdemOmega => vec![Param::obj("rho"), Param::obj("rhoBar")],
            K::OrdRho | K::MaxOrdRho | K::RestRho | K::MaxRestRho => vec![Param::obj("rho"), Param::obj("f")],
            K::PhiN => vec![Param::Int(prime * prime)],
            K::PsiN => vec![p, Param::Int(prime * prime)],
            K::Psi2 | K::Psi3 => vec![p],
            K::Psi4 | K::Psi5 => vec![],
        }
    }
}

impl GroupDefFormulaKind {
    pub fn is_sentence(self) -> bool {
        self.signature().iter().all(|k| *k == Int)
    }
}

/// Builds the second-order group formula `kind` with the given free parameters.
pub fn build_group_formula(kind: GroupDefFormulaKind, params: &[Param]) -> Result<Formula, SyntaxError> {
    use GroupDefFormulaKind as K;
    let args = Args::check(kind.name(), kind.signature(), params)?;
    let mut names = args.names();
    let n = &mut names;
    Ok(match kind {
        K::Gr => group_defs::gr(n, args.pred(0)),
        K::Cycl => group_defs::cycl(n, args.pred(0)),
        K::DCycl => group_defs::dcycl(n, args.pred(0)),
        K::GrA => group_defs::cyclic_generated_by(n, args.pred(0), args.obj(1)),
        K::GOrdA => group_defs::bounded_by_element(n, args.pred(0), args.obj(1)),
        K::OrdLeq => group_defs::ord_leq(n, args.obj(0), args.obj(1)),
        K::OrdLt => group_defs::ord_lt(n, args.obj(0), args.obj(1)),
        K::OrdEq => group_defs::ord_eq(n, args.obj(0), args.obj(1)),
        K::MultA => group_defs::multiple_of_order(n, args.int(0), args.obj(1), args.obj(2), args.obj(3)),
        K::Serv => group_defs::serv(n, args.int(0), args.pred(1)),
        K::Fd => group_defs::fd(n, args.int(0), args.pred(1)),
        K::Base => group_defs::base(n, args.int(0), args.pred(1)),
        K::D => group_defs::divisible(n, args.int(0), args.pred(1)),
        K::Exept => group_defs::exceptional(n, args.int(0)),
        K::Endom => group_defs::endom(n, args.pred(0)),
        K::HomB => group_defs::hom_from(n, args.pred(0), args.pred(1)),
        K::EndomB => group_defs::extends_to_endomorphism(n, args.int(0), args.pred(1), args.pred(2)),
        K::PhiExt => group_defs::extension_value(n, args.int(0), args.pred(1), args.pred(2), args.obj(3), args.obj(4)),
    })
}

/// Builds the first-order ring formula `kind` with the given free parameters.
pub fn build_ring_formula(kind: RingDefFormulaKind, params: &[Param]) -> Result<Formula, SyntaxError> {
    use RingDefFormulaKind as K;
    let args = Args::check(kind.name(), kind.signature(), params)?;
    let mut names = args.names();
    let n = &mut names;
    let small = |i: usize| u32::try_from(args.int(i)).unwrap_or(u32::MAX);
    Ok(match kind {
        K::Idem => ring_defs::idem(args.obj(0)),
        K::IdemStar => ring_defs::primitive_idempotent(n, args.obj(0)),
        K::IdemStarI => ring_defs::primitive_of_order(n, args.int(0), small(1), args.obj(2)),
        K::Comp => ring_defs::homogeneous_decomposition(n, args.int(0), &args.objs_from(1)),
        K::CardL => {
            let rhos = args.objs_from(2);
            let l = args.int(1) as usize;
            if l > rhos.len() {
                return Err(SyntaxError::ParamType {
                    kind: kind.name().to_string(),
                    index: 1,
                    expected: format!("an index between 1 and {}", rhos.len()),
                });
            }
            ring_defs::largest_component(n, args.int(0), l, &rhos)
        }
        K::CardLt => ring_defs::card_lt(n, args.obj(0), args.obj(1)),
        K::CardEq => ring_defs::card_eq(n, args.obj(0), args.obj(1)),
        K::Fin => ring_defs::finitely_generated(n, args.obj(0)),
        K::Inf => ring_defs::infinitely_generated(n, args.obj(0)),
        K::Count => ring_defs::countably_generated(n, args.obj(0)),
        K::IdemOmega => ring_defs::countable_summand_of(n, args.obj(0), args.obj(1)),
        K::PhiN => ring_defs::exponent_divides(n, args.int(0)),
        K::PsiN => ring_defs::bounded_beside_divisible(n, args.int(0), args.int(1)),
        K::OrdLeqCenter => ring_defs::ord_leq_center(n, args.obj(0), args.obj(1)),
        K::OrdRho => ring_defs::homogeneous_of_order(n, args.obj(0), args.obj(1)),
        K::MaxOrdRho => ring_defs::maximal_homogeneous(n, args.obj(0), args.obj(1)),
        K::RestRho => ring_defs::bounded_by_order(n, args.obj(0), args.obj(1)),
        K::MaxRestRho => ring_defs::maximal_bounded(n, args.obj(0), args.obj(1)),
        K::BaseBar => ring_defs::basic_parts_inside(n, args.obj(0)),
        K::BaseEndo => ring_defs::basic_image(n, args.obj(0)),
        K::Psi2 => ring_defs::divisible_absorbs_reduced(n, args.int(0)),
        K::Psi3 => ring_defs::final_rank_is_rank(n, args.int(0)),
        K::Psi4 => ring_defs::homogeneous_parts_finite_or_full(n),
        K::Psi5 => ring_defs::eventually_finite_or_full(n),
    })
}

#[cfg(test)]
mod tests;
