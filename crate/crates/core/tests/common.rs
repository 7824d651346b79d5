#![allow(dead_code)]

use proptest::prelude::*;
use rdt_core::syntax::{parse_definition, Definition};
use rdt_core::term::{Signature, Sort, Term};

pub fn def(src: &str) -> Definition {
    parse_definition(src).unwrap_or_else(|d| panic!("{d}\n{src}"))
}

/// Random ground terms over the data sort of `sig` (data arguments only).
pub fn terms(sig: &Signature, depth: u32, size: u32) -> BoxedStrategy<Term> {
    let leaves: Vec<Term> = sig
        .ctor_ids()
        .filter(|c| sig.arity(*c) == 0)
        .map(Term::constant)
        .collect();
    let nodes: Vec<(rdt_core::term::CtorId, usize)> = sig
        .ctor_ids()
        .filter(|c| sig.arity(*c) > 0 && sig.ctor(*c).args.iter().all(|s| *s == Sort::Data))
        .map(|c| (c, sig.arity(c)))
        .collect();
    let leaf = proptest::sample::select(leaves);
    leaf.prop_recursive(depth, size, 2, move |inner| {
        let choices: Vec<BoxedStrategy<Term>> = nodes
            .iter()
            .map(|&(c, n)| {
                proptest::collection::vec(inner.clone(), n)
                    .prop_map(move |args| Term::app(c, args))
                    .boxed()
            })
            .collect();
        proptest::strategy::Union::new(choices)
    })
    .boxed()
}
