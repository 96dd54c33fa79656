mod common;

use common::{bowtie, cycle, k4, leaf_side, leaf_trees, path, random_graph, rng, two_triangles};
use plgraph::corpus::plane_graphs;
use plgraph::decomposition::{
    branch_width_exact, carving_width_exact, certify, certify_disc, leaving_graph, linked_improvement_step,
    make_bond_linked, make_disc, make_linked, make_linked_with, mu, mu_vertex, order_lt_w, rebranch, CarvingTree,
    ExactOptions, Property, RunLog, Verdict, Violation, WOrder,
};
use plgraph::plane_graph::{connectivity_profile, cut};
use plgraph::{Error, PlaneGraph};
use proptest::prelude::*;

fn tree(g: &PlaneGraph, s: &str) -> CarvingTree {
    CarvingTree::parse(s, g).unwrap()
}

fn brute_cw(g: &PlaneGraph) -> usize {
    let n = g.num_vertices();
    leaf_trees(n)
        .iter()
        .map(|t| {
            (0..t.len())
                .map(|i| cut(g, &leaf_side(t, i, n)).unwrap().len())
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap()
}

fn brute_bw(g: &PlaneGraph) -> usize {
    let m = g.num_edges();
    let ends = g.edge_list();
    leaf_trees(m)
        .iter()
        .map(|t| {
            (0..t.len())
                .map(|i| {
                    let side = leaf_side(t, i, m);
                    (0..g.num_vertices())
                        .filter(|&v| {
                            let touches = |s: bool| (0..m).any(|e| side[e] == s && (ends[e].0 == v || ends[e].1 == v));
                            touches(true) && touches(false)
                        })
                        .count()
                })
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap()
}

fn holds(g: &PlaneGraph, t: &CarvingTree, p: Property) -> bool {
    certify(g, t, p).unwrap().holds()
}

#[test]
fn widths_of_small_trees() {
    let c4 = cycle(4);
    let adjacent = tree(&c4, "( ( v0 v1 ) ( v2 v3 ) )");
    let antipodal = tree(&c4, "( ( v0 v2 ) ( v1 v3 ) )");
    assert_eq!(adjacent.width(&c4).unwrap(), 2);
    assert_eq!(antipodal.width(&c4).unwrap(), 4);
    let e = path(2);
    assert_eq!(tree(&e, "( v0 v1 )").width(&e).unwrap(), 1);
    let table = adjacent.widths(&c4).unwrap();
    for row in &table.rows {
        let mut side = vec![false; 4];
        for &v in &row.side1 {
            side[v] = true;
        }
        assert_eq!(cut(&c4, &side).unwrap(), row.cut);
        assert_eq!(row.width, row.cut.len());
    }
}

#[test]
fn label_mismatch_is_reported() {
    let c4 = cycle(4);
    assert!(matches!(CarvingTree::parse("( v0 v1 )", &c4), Err(Error::LabelMismatch(_))));
    assert!(matches!(CarvingTree::parse("( ( v0 v1 ) ( v2 v9 ) )", &c4), Err(Error::LabelMismatch(_))));
}

#[test]
fn sexpr_round_trip() {
    let g = k4();
    let (_, t) = carving_width_exact(&g, &ExactOptions::default()).unwrap();
    let s = t.to_sexpr(&g);
    let back = CarvingTree::parse(&s, &g).unwrap();
    assert_eq!(back.to_sexpr(&g), s);
    let r = t.rooted();
    let rs = r.to_sexpr(&g);
    assert!(rs.starts_with("( _ "));
    assert_eq!(CarvingTree::parse(&rs, &g).unwrap().to_sexpr(&g), rs);
    assert_eq!(rs, format!("( _ {s} )"));
}

#[test]
fn exact_carving_width_examples() {
    let o = ExactOptions::default();
    assert_eq!(carving_width_exact(&cycle(4), &o).unwrap().0, 2);
    assert_eq!(carving_width_exact(&path(2), &o).unwrap().0, 1);
    // K4 by enumeration of all 4-leaf trees: every tree has a middle edge
    // splitting the vertices into two pairs, which cuts 4 edges
    assert_eq!(brute_cw(&k4()), 4);
    assert_eq!(carving_width_exact(&k4(), &o).unwrap().0, 4);
    let big = common::grid_drawing(4, 4);
    assert!(matches!(carving_width_exact(&big, &o), Err(Error::TooLarge(_))));
}

#[test]
fn exact_branch_width_examples() {
    let o = ExactOptions::default();
    assert_eq!(branch_width_exact(&path(2), &o).unwrap(), 0);
    assert_eq!(branch_width_exact(&cycle(3), &o).unwrap(), 2);
    assert_eq!(branch_width_exact(&cycle(5), &o).unwrap(), 2);
    assert_eq!(brute_bw(&cycle(5)), 2);
}

#[test]
fn exact_widths_match_enumeration_on_corpus() {
    let o = ExactOptions::default();
    for g in plane_graphs(6, 7, true) {
        let (k, t) = carving_width_exact(&g, &o).unwrap();
        assert_eq!(k, brute_cw(&g), "cw of {}", g.to_plg());
        assert_eq!(t.width(&g).unwrap(), k);
        if (1..=7).contains(&g.num_edges()) {
            assert_eq!(branch_width_exact(&g, &o).unwrap(), brute_bw(&g), "bw of {}", g.to_plg());
        }
    }
}

#[test]
fn bond_violations() {
    let c4 = cycle(4);
    let antipodal = tree(&c4, "( ( v0 v2 ) ( v1 v3 ) )");
    assert!(matches!(
        certify(&c4, &antipodal, Property::Bond).unwrap(),
        Verdict::Fails(Violation::Bond { .. })
    ));
    let b = bowtie();
    let (_, t) = carving_width_exact(&b, &ExactOptions::default()).unwrap();
    // the complement of the cut vertex's leaf is disconnected
    match certify(&b, &t, Property::Bond).unwrap() {
        Verdict::Fails(Violation::Bond { .. }) => {}
        v => panic!("expected a bond violation, got {v:?}"),
    }
}

#[test]
fn width_order_examples() {
    let c4 = cycle(4);
    let adjacent = tree(&c4, "( ( v0 v1 ) ( v2 v3 ) )");
    let antipodal = tree(&c4, "( ( v0 v2 ) ( v1 v3 ) )");
    assert_eq!(order_lt_w(&c4, &adjacent, &adjacent).unwrap(), WOrder::Equal);
    assert_eq!(order_lt_w(&c4, &adjacent, &antipodal).unwrap(), WOrder::Less);
    assert_eq!(order_lt_w(&c4, &antipodal, &adjacent).unwrap(), WOrder::Greater);
    let other = tree(&c4, "( ( v1 v2 ) ( v3 v0 ) )");
    assert_eq!(order_lt_w(&c4, &adjacent, &other).unwrap(), WOrder::Equal);
    assert!(matches!(order_lt_w(&cycle(5), &adjacent, &other), Err(Error::GraphMismatch)));
}

fn antipodal_c4() -> CarvingTree {
    tree(&cycle(4), "( ( v0 v2 ) ( v1 v3 ) )")
}

#[test]
fn improvement_step_descends() {
    // in the path v0-v1-v2-v3 the leaves of v1 and v2 are joined by one
    // edge, but every tree edge between them cuts two
    let p4 = path(4);
    let bad = tree(&p4, "( ( v0 v3 ) ( v1 v2 ) )");
    assert!(holds(&cycle(4), &antipodal_c4(), Property::Linked));
    let Verdict::Fails(Violation::Linked { a, b, m_cut, path_min }) = certify(&p4, &bad, Property::Linked).unwrap() else {
        panic!("tree is linked");
    };
    assert!(m_cut < path_min);
    let out = linked_improvement_step(&p4, &bad, (a, b)).unwrap();
    assert_eq!(order_lt_w(&p4, &out, &bad).unwrap(), WOrder::Less);
    for x in 0..out.num_nodes() {
        if out.is_leaf(x) {
            assert!(out.label(x).is_some());
        }
    }
    let c4 = cycle(4);
    let adjacent = tree(&c4, "( ( v0 v1 ) ( v2 v3 ) )");
    let e = adjacent.edges();
    assert_eq!(linked_improvement_step(&c4, &adjacent, (e[0], e[1])), Err(Error::PairIsLinked));
}

#[test]
fn linked_examples() {
    for (g, k) in [(cycle(5), 2), (path(2), 1), (k4(), 4)] {
        let t = make_linked(&g).unwrap();
        assert!(holds(&g, &t, Property::Linked));
        assert_eq!(t.width(&g).unwrap(), k);
    }
}

#[test]
fn rebranch_examples() {
    let g = cycle(6);
    let t = tree(&g, "( ( ( v0 v1 ) ( v2 v3 ) ) ( v4 v5 ) )");
    // the edge between the two inner nodes above the pairs
    let inner: Vec<_> = t
        .edges()
        .into_iter()
        .filter(|&(x, y)| t.neighbors(x).len() == 3 && t.neighbors(y).len() == 3)
        .collect();
    let s = inner[0];
    let (u, v) = s;
    let ux: Vec<_> = t.neighbors(u).iter().copied().filter(|&z| z != v).collect();
    let vy: Vec<_> = t.neighbors(v).iter().copied().filter(|&z| z != u).collect();
    let r1 = rebranch(&t, s, (ux[0], vy[0])).unwrap();
    let r2 = rebranch(&t, s, (ux[0], vy[1])).unwrap();
    assert_ne!(r1.to_sexpr(&g), r2.to_sexpr(&g));
    assert_ne!(r1.to_sexpr(&g), t.to_sexpr(&g));
    // pairing the two subtrees that used to hang at u undoes the move
    let back = rebranch(&r1, s, (ux[0], ux[1])).unwrap();
    assert_eq!(back.to_sexpr(&g), t.to_sexpr(&g));
    let leaf_edge = t.edges().into_iter().find(|&(x, y)| t.is_leaf(x) || t.is_leaf(y)).unwrap();
    assert_eq!(rebranch(&t, leaf_edge, (0, 0)), Err(Error::LeafEndpoint));
}

#[test]
fn potential_examples() {
    let p4 = path(4);
    // inner node displaying {v0}, {v3} and {v1, v2}
    let t = tree(&p4, "( ( v0 v3 ) ( v1 v2 ) )");
    let x = (0..t.num_nodes())
        .find(|&x| {
            let ns = t.neighbors(x);
            ns.len() == 3 && ns.iter().any(|&y| t.label(y) == Some(0)) && ns.iter().any(|&y| t.label(y) == Some(3))
        })
        .unwrap();
    assert_eq!(mu_vertex(&p4, &t, x).unwrap(), 1);
    // a star: the centre's leaf against two leaves of the star
    let star = plgraph::corpus::straight_line(
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, -1.0)],
        &[(0, 1), (0, 2), (0, 3)],
    )
    .unwrap();
    let t = tree(&star, "( ( v1 v2 ) ( v0 v3 ) )");
    let x = (0..t.num_nodes())
        .find(|&x| t.neighbors(x).iter().any(|&y| t.label(y) == Some(1)))
        .unwrap();
    // parts {v1}, {v2}, {v0, v3}: only E({v1}, {v2}) is empty
    assert_eq!(mu_vertex(&star, &t, x).unwrap(), 1);
    let c5 = cycle(5);
    let bl = make_bond_linked(&c5).unwrap();
    assert_eq!(mu(&c5, &bl).unwrap(), 0);
}

#[test]
fn bond_linked_examples() {
    for (g, k) in [(cycle(5), 2), (k4(), 4)] {
        let t = make_bond_linked(&g).unwrap();
        assert!(holds(&g, &t, Property::Bond));
        assert!(holds(&g, &t, Property::Linked));
        assert_eq!(t.width(&g).unwrap(), k);
    }
    assert_eq!(make_bond_linked(&bowtie()), Err(Error::Not2VC));
}

fn check_disc(g: &PlaneGraph) -> CarvingTree {
    let (t, certs) = make_disc(g).unwrap();
    assert!(holds(g, &t, Property::Disc));
    assert!(holds(g, &t, Property::Linked), "not linked: {}", t.to_sexpr(g));
    assert_eq!(certs.len(), t.edges().len());
    // consecutive crossings lie on the face the curve runs through
    for c in &certs {
        let k = c.boundary.len();
        assert_eq!(k, cut(g, &(0..g.num_vertices()).map(|v| c.inside.contains(&v)).collect::<Vec<_>>()).unwrap().len());
        for i in 0..k {
            let next = g.dart_edge(c.boundary[(i + 1) % k]);
            let walk = &g.faces()[c.faces[i]].darts;
            assert!(walk.iter().any(|&d| g.dart_edge(d) == next));
            assert!(walk.contains(&c.boundary[i]));
        }
    }
    t
}

#[test]
fn disc_examples() {
    let o = ExactOptions::default();
    let b = bowtie();
    let t = check_disc(&b);
    assert_eq!(t.width(&b).unwrap(), 4);
    assert_eq!(carving_width_exact(&b, &o).unwrap().0, 4);
    let p = path(4);
    assert_eq!(check_disc(&p).width(&p).unwrap(), 2);
    let tt = two_triangles();
    let t = check_disc(&tt);
    let zero = t.widths(&tt).unwrap().rows.iter().filter(|r| r.width == 0).count();
    assert_eq!(zero, 1);
    assert_eq!(t.width(&tt).unwrap(), 2);
}

#[test]
fn disc_certification_rejects_interleaved_sides() {
    // vertices 0 and 2 of the 4-cycle inside one curve, 1 and 3 outside,
    // is fine on the sphere; a nested triangle inside a face breaks it
    let g = common::load("nested_triangles.plg");
    let t = CarvingTree::parse("( ( a x ) ( ( b c ) ( y z ) ) )", &g).unwrap();
    match certify(&g, &t, Property::Disc).unwrap() {
        Verdict::Fails(Violation::Unsupported { .. } | Violation::Disc { .. }) => {}
        v => panic!("expected a failure, got {v:?}"),
    }
}

#[test]
fn ancestor_examples() {
    let g = cycle(5);
    let (t, _) = make_disc(&g).unwrap();
    let r = t.rooted();
    let edges = r.edges();
    for &e in &edges {
        assert!(r.ancestor(&g, e, e).unwrap());
    }
    let w = |e: (usize, usize)| {
        let side = r.side(e.0, e.1);
        cut(&g, &(0..5).map(|v| side >> v & 1 == 1).collect::<Vec<_>>()).unwrap().len()
    };
    for &a in &edges {
        for &b in &edges {
            if w(a) != w(b) {
                assert!(!r.ancestor(&g, a, b).unwrap());
            }
        }
    }
    assert_eq!(t.ancestor(&g, edges[0], edges[0]), Err(Error::Unrooted));
    // a tree v0-v1-v2-v3 with a pendant v4 at v1; the root sits next to v0
    let g = plgraph::corpus::straight_line(
        &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (1.0, 1.0)],
        &[(0, 1), (1, 2), (2, 3), (1, 4)],
    )
    .unwrap();
    let t = tree(&g, "( v0 ( v1 ( v4 ( v2 v3 ) ) ) )").rooted();
    let find = |side: u64| t.edges().into_iter().find(|&e| t.below(e).unwrap() == side).unwrap();
    let (z, y, x, top) = (find(0b00100), find(0b01100), find(0b11100), find(0b11110));
    // {v2} and {v2, v4, v3} both cut 2 edges, but {v2, v3} in between cuts 1
    assert!(!t.ancestor(&g, x, z).unwrap());
    // {v1..v4} and {v2, v3} cut 1 edge; the edge between them cuts 2
    assert!(t.ancestor(&g, top, y).unwrap());
    assert!(!t.ancestor(&g, y, top).unwrap());
}

#[test]
fn leaving_graph_examples() {
    let g = k4();
    let (t, _) = make_disc(&g).unwrap();
    let r = t.rooted();
    let certs = certify_disc(&g, &r).unwrap();
    for e in r.edges() {
        let below = r.below(e).unwrap();
        let lg = leaving_graph(&g, &r, &certs, e).unwrap();
        let w = cut(&g, &(0..4).map(|v| below >> v & 1 == 1).collect::<Vec<_>>()).unwrap().len();
        assert_eq!(lg.stubs().len(), w);
        assert_eq!(lg.graph.num_vertices(), below.count_ones() as usize + 1);
        if below.count_ones() == 1 {
            assert_eq!(lg.graph.num_vertices(), 2);
            assert_eq!(lg.graph.num_edges(), 3);
        }
        if below.count_ones() == 4 {
            assert_eq!(lg.stubs().len(), 0);
            assert_eq!(lg.graph.num_edges(), 6);
        }
    }
    let tt = two_triangles();
    let (t, _) = make_disc(&tt).unwrap();
    let r = t.rooted();
    let certs = certify_disc(&tt, &r).unwrap();
    let zero = r
        .edges()
        .into_iter()
        .find(|&e| {
            let b = r.below(e).unwrap();
            b != 0 && b != 0b111111 && cut(&tt, &(0..6).map(|v| b >> v & 1 == 1).collect::<Vec<_>>()).unwrap().is_empty()
        })
        .unwrap();
    let lg = leaving_graph(&tt, &r, &certs, zero).unwrap();
    assert!(lg.stubs().is_empty());
    assert_eq!(lg.graph.degree(lg.hub), 0);
}

#[test]
fn constructions_are_optimal_on_small_corpus() {
    let o = ExactOptions::default();
    for g in plane_graphs(5, 7, true) {
        let k = carving_width_exact(&g, &o).unwrap().0;
        let mut log = RunLog::default();
        let t = make_linked_with(&g, &o, &mut log).unwrap();
        assert_eq!(t.width(&g).unwrap(), k);
        for (before, after) in &log.steps {
            assert_eq!(order_lt_w(&g, after, before).unwrap(), WOrder::Less);
        }
        let d = check_disc(&g);
        assert_eq!(d.width(&g).unwrap(), k, "{}", g.to_plg());
        if connectivity_profile(&g).is_2vc {
            let b = make_bond_linked(&g).unwrap();
            assert!(holds(&g, &b, Property::Bond));
            assert!(holds(&g, &b, Property::Linked));
            assert_eq!(b.width(&g).unwrap(), k);
        }
    }
}

/// The 2-vertex-connected graphs of the small corpus. On a path the middle
/// vertex's singleton has potential 0 while its complement is disconnected,
/// so the potential only detects bond violations without cut vertices.
fn two_connected() -> &'static [PlaneGraph] {
    static CELL: std::sync::OnceLock<Vec<PlaneGraph>> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        plane_graphs(6, 9, true)
            .into_iter()
            .filter(|g| g.num_vertices() >= 3 && connectivity_profile(g).is_2vc)
            .collect()
    })
}

fn to_tree(edges: &[(usize, usize)], n: usize) -> CarvingTree {
    let size = edges.iter().map(|&(x, y)| x.max(y) + 1).max().unwrap_or(1).max(n);
    let mut nbr = vec![Vec::new(); size];
    for &(x, y) in edges {
        nbr[x].push(y);
        nbr[y].push(x);
    }
    let label = (0..size).map(|x| (x < n).then_some(x)).collect();
    CarvingTree::from_parts(nbr, label, None).unwrap()
}

#[test]
fn potential_misses_cut_vertices() {
    let p3 = path(3);
    let t = tree(&p3, "( v0 ( v1 v2 ) )");
    assert_eq!(mu(&p3, &t).unwrap(), 0);
    assert!(!holds(&p3, &t, Property::Bond));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn widths_agree_with_cut(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 8);
        let (_, t) = carving_width_exact(&g, &ExactOptions::default()).unwrap();
        for row in t.widths(&g).unwrap().rows {
            let side: Vec<bool> = (0..g.num_vertices()).map(|v| row.side1.contains(&v)).collect();
            prop_assert_eq!(cut(&g, &side).unwrap().len(), row.width);
        }
    }

    #[test]
    fn zero_potential_iff_bond(gi in any::<prop::sample::Index>(), ti in any::<prop::sample::Index>()) {
        let graphs = two_connected();
        let g = &graphs[gi.index(graphs.len())];
        let n = g.num_vertices();
        let trees = leaf_trees(n);
        let t = to_tree(&trees[ti.index(trees.len())], n);
        prop_assert_eq!(mu(g, &t).unwrap() == 0, holds(g, &t, Property::Bond));
    }

    #[test]
    fn disc_decompositions_of_random_graphs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 8);
        let t = check_disc(&g);
        prop_assert_eq!(t.width(&g).unwrap(), carving_width_exact(&g, &ExactOptions::default()).unwrap().0);
    }
}
