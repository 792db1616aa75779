//! Property bodies shared by the proptest suite and the acceptance runner.

use std::collections::HashSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use tilecensus::io::{format_diagram, format_vertex_set, parse_diagram, parse_vertex_set};
use tilecensus::model::{DecoratedCorner, PlanarDiagram, VertexSet};
use tilecensus::symmetry::{
    canonical_form, equivalent, is_canonical, transform_diagram, transform_vertex_set,
    CanonicalKey, DihedralElement,
};
use tilecensus::trace::{classify, diagram_of, trace_cycle, validate_vertex_set, vertices_of};

pub type PropResult = Result<(), TestCaseError>;

pub fn element(n: usize, c: usize, reflect: bool) -> DihedralElement {
    if reflect {
        DihedralElement::Reflection(c % n)
    } else {
        DihedralElement::Rotation(c % n)
    }
}

pub fn round_trip(d: &PlanarDiagram) -> PropResult {
    prop_assert_eq!(&diagram_of(&vertices_of(d)).unwrap(), d);
    Ok(())
}

pub fn mirror_cycles(d: &PlanarDiagram) -> PropResult {
    for i in 0..d.n() {
        let plus = trace_cycle(d, DecoratedCorner::plus(i));
        let mut minus = trace_cycle(d, DecoratedCorner::minus(i));
        minus.reverse();
        let mirrored: Vec<_> = minus.into_iter().map(DecoratedCorner::flipped).collect();
        let start = mirrored.iter().position(|&c| c == plus[0]);
        prop_assert!(start.is_some(), "{} from {}", format_diagram(d), i);
        let start = start.unwrap();
        let rotated: Vec<_> = mirrored[start..]
            .iter()
            .chain(&mirrored[..start])
            .copied()
            .collect();
        prop_assert_eq!(rotated, plus);
    }
    Ok(())
}

pub fn action(d: &PlanarDiagram, g: DihedralElement) -> PropResult {
    let n = d.n();
    let image = transform_diagram(d, g);
    prop_assert_eq!(&transform_diagram(&image, g.inverse(n)), d);
    prop_assert_eq!(
        vertices_of(&image),
        transform_vertex_set(&vertices_of(d), g)
    );
    prop_assert!(equivalent(d, &image).unwrap());
    prop_assert_eq!(
        CanonicalKey::of(&canonical_form(&image).representative),
        canonical_form(d).key
    );
    Ok(())
}

pub fn composition(d: &PlanarDiagram, g: DihedralElement, h: DihedralElement) -> PropResult {
    let n = d.n();
    prop_assert_eq!(
        transform_diagram(d, g.compose(h, n)),
        transform_diagram(&transform_diagram(d, h), g)
    );
    Ok(())
}

pub fn degree_identity(d: &PlanarDiagram) -> PropResult {
    let s = classify(d);
    prop_assert!(s.satisfies_degree_identity());
    prop_assert_eq!(s.degrees.iter().sum::<usize>(), d.n());
    prop_assert_eq!(s.v as i64 - s.e as i64 + 1, s.chi);
    prop_assert_eq!(s.orientable, d.all_opposing());
    Ok(())
}

pub fn canonical_form_laws(d: &PlanarDiagram) -> PropResult {
    let cf = canonical_form(d);
    prop_assert!(is_canonical(&cf.representative));
    prop_assert_eq!(CanonicalKey::of(&cf.representative), cf.key.clone());
    prop_assert_eq!(2 * d.n(), cf.orbit_size() * cf.stabilizer_order);
    let images: HashSet<_> = DihedralElement::all(d.n())
        .map(|g| transform_diagram(d, g))
        .collect();
    prop_assert_eq!(images.len(), cf.orbit_size());
    prop_assert!(images.iter().all(|x| CanonicalKey::of(x) >= cf.key));
    Ok(())
}

pub fn text_round_trips(d: &PlanarDiagram) -> PropResult {
    let text = format_diagram(d);
    prop_assert_eq!(&parse_diagram(&text).unwrap(), d);
    let spaced = text.replace(' ', "   ").replace(',', " , ");
    prop_assert_eq!(&parse_diagram(&spaced).unwrap(), d);
    let vs = vertices_of(d);
    let vtext = format_vertex_set(&vs);
    let back = parse_vertex_set(&vtext).unwrap();
    prop_assert_eq!(&back, &vs);
    prop_assert_eq!(format_vertex_set(&back), vtext);
    Ok(())
}

fn swapped(vs: &VertexSet, a: usize, b: usize) -> VertexSet {
    let swap = |c: usize| {
        if c == a {
            b
        } else if c == b {
            a
        } else {
            c
        }
    };
    let cycles = vs
        .vertices()
        .iter()
        .map(|v| {
            v.cycle()
                .iter()
                .map(|c| DecoratedCorner::new(swap(c.corner), c.sign))
                .collect()
        })
        .collect();
    VertexSet::new(vs.n(), cycles).unwrap()
}

/// Swapping two corners of a realizable set: the validity check must agree
/// with whether some diagram induces the result.
pub fn validation_matches_realizability(d: &PlanarDiagram, a: usize, b: usize) -> PropResult {
    let n = d.n();
    let mutated = swapped(&vertices_of(d), a % n, b % n);
    let valid = validate_vertex_set(&mutated).is_valid();
    let min_degree_ok = mutated.vertices().iter().all(|v| v.degree() >= 3);
    prop_assert_eq!(valid, min_degree_ok && diagram_of(&mutated).is_ok());
    Ok(())
}
