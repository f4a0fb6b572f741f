mod common;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use textworlds::render::*;
use textworlds::rng::item_rng;
use textworlds::scenariogen::{gen_dataset, GenConfig, Task, World};
use textworlds::vocab::Vocabulary;
use textworlds::world::{ContainerState, Coord, Direction, GridMap, Placement, Route};

fn random_state(seed: u64, vocab: &Vocabulary) -> ContainerState {
    let mut rng = item_rng(seed);
    let nouns = &vocab.wordset("train-all").unwrap().words;
    let names = &vocab.wordset("containers").unwrap().words;
    let k = rng.gen_range(1..=5);
    let n = rng.gen_range(0..=12);
    let chosen: Vec<&String> = names.choose_multiple(&mut rng, k).collect();
    let mut spec: Vec<(String, Vec<String>)> = chosen.iter().map(|c| (c.to_string(), vec![])).collect();
    for o in nouns.choose_multiple(&mut rng, n) {
        spec[rng.gen_range(0..k)].1.push(o.clone());
    }
    ContainerState::new(spec).unwrap()
}

#[test]
fn example_state_sentences() {
    let s = common::state(&[("bin", &["ball", "quilt", "snake"]), ("box", &[])]);
    assert_eq!(render_container_state(&s), common::CONTAINER_TARGET);
    assert_eq!(
        render_container_state(&common::state(&[("bin", &["ball"])])),
        "The bin contains a ball."
    );
    assert_eq!(
        render_container_state(&common::state(&[("bin", &["snake", "ball"])])),
        "The bin contains a ball and a snake."
    );
}

#[test]
fn example_rows_render_exactly() {
    for (label, world, prefix, target) in common::example_rows() {
        assert_eq!(render_prefix(&world).unwrap(), prefix, "{label}");
        assert_eq!(render_target(&world).unwrap(), target, "{label}");
    }
}

#[test]
fn two_room_map_has_one_sentence() {
    let mut map = GridMap::from_coords([("hall", Coord(0, 0))]);
    map.attach("study", Direction::North, "hall").unwrap();
    let w = World::NavRoute {
        map,
        src: "hall".into(),
        dst: "study".into(),
    };
    let p = render_prefix(&w).unwrap();
    assert_eq!(p.matches(" is to the ").count(), 1);
    assert!(p.starts_with("The study is to the north of the hall."), "{p}");
}

#[test]
fn route_styles() {
    use Direction::*;
    let r = |d: &[Direction]| Route(d.to_vec());
    assert_eq!(render_route(&r(&[West]), RouteStyle::Answer).unwrap(), "to the west.");
    assert_eq!(
        render_route(&r(&[North, North, West]), RouteStyle::Narration).unwrap(),
        "Went to the north twice, then went to the west."
    );
    assert_eq!(
        render_route(&r(&[East]), RouteStyle::Narration).unwrap(),
        "Went to the east."
    );
    assert_eq!(
        render_route(&r(&[South, South, South, East]), RouteStyle::Narration).unwrap(),
        "Went to the south 3 times, then went to the east."
    );
    assert_eq!(
        render_route(&r(&[North, West]), RouteStyle::Answer).unwrap(),
        "to the north, then to the west."
    );
    assert_eq!(
        render_route(&Route::default(), RouteStyle::Answer),
        Err(RenderError::EmptyRoute)
    );
    assert_eq!(
        parse_route_answer("to the north, then to the west.").unwrap(),
        r(&[North, West])
    );
    assert!(parse_route_answer("to the up.").is_err());
}

#[test]
fn parse_examples() {
    let p = parse_final_state(common::CONTAINER_TARGET).unwrap();
    assert_eq!(
        p.state,
        common::state(&[("bin", &["ball", "quilt", "snake"]), ("box", &[])])
    );
    assert!(p.placements.is_empty());
    assert_eq!(
        parse_final_state("The bin contains a ball.").unwrap().state,
        common::state(&[("bin", &["ball"])])
    );
    let h = parse_final_state(common::HARD_TARGET).unwrap();
    assert_eq!(h.placements.len(), 2);
    assert_eq!(h.placements[0].room, "garden");
}

#[test]
fn parse_errors_name_the_sentence() {
    match parse_final_state("The bin contains a ball. The box holds a cup.") {
        Err(RenderError::Unparseable { index, .. }) => assert_eq!(index, 1),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_final_state("The bin contains a ball. The bin contains a cup."),
        Err(RenderError::DuplicateContainer { index: 1, .. })
    ));
    assert!(parse_final_state("").is_err());
    assert!(parse_final_state("The bin contains a ball, a cup.").is_err());
}

#[test]
fn parse_inverts_render_on_random_states() {
    let vocab = Vocabulary::bundled();
    for seed in 0..10_000 {
        let s = random_state(seed, &vocab);
        let text = render_container_state(&s);
        assert_eq!(parse_final_state(&text).unwrap().state, s, "{text}");
    }
}

#[test]
fn parse_inverts_located_form() {
    let vocab = Vocabulary::bundled();
    let rooms = &vocab.wordset("rooms").unwrap().words;
    for seed in 0..2_000 {
        let s = random_state(seed, &vocab);
        let mut rng = item_rng(seed ^ 0xFF);
        let placements: Vec<Placement> = s
            .names()
            .zip(rooms.choose_multiple(&mut rng, s.containers.len()))
            .map(|(c, r)| Placement {
                container: c.to_string(),
                room: r.clone(),
            })
            .collect();
        let text = render_located_state_with(&s, &placements, &English);
        let p = parse_final_state(&text).unwrap();
        assert_eq!(p.state, s);
        assert_eq!(p.placements, placements);
    }
}

#[test]
fn serial_comma_counts() {
    let items = ["ant", "bee", "cat", "dog", "eel", "fox", "gnu"];
    for n in 1..=items.len() {
        let s = common::state(&[("bin", &items[..n])]);
        let text = render_container_state(&s);
        let commas = text.matches(',').count();
        assert_eq!(commas, if n >= 3 { n - 1 } else { 0 }, "{text}");
        assert_eq!(text.matches(" and ").count(), (n >= 2) as usize, "{text}");
    }
}

fn mixed_scenarios() -> Vec<textworlds::Scenario> {
    let vocab = Vocabulary::bundled();
    Task::ALL
        .iter()
        .flat_map(|t| {
            let mut cfg = GenConfig::training(*t);
            cfg.count = 250;
            cfg.seed = 77;
            gen_dataset(&cfg, &vocab).unwrap()
        })
        .collect()
}

#[test]
fn gibberish_preserves_tokens_and_inverts() {
    let vocab = Vocabulary::bundled();
    let avoid: HashSet<String> = vocab.lexicon().words().map(str::to_string).collect();
    let map = build_gibberish_map(9, &avoid);
    let slots = vocab.slot_words();
    let scenarios = mixed_scenarios();
    assert_eq!(scenarios.len(), 1000);
    for s in &scenarios {
        for text in [&s.prefix, &s.target] {
            let g = apply_gibberish(text, &map, &slots).unwrap();
            assert_eq!(g.split_whitespace().count(), text.split_whitespace().count());
            assert_eq!(g.matches(['.', ',']).count(), text.matches(['.', ',']).count());
            assert_eq!(&invert_gibberish(&g, &map), text);
        }
    }
}

#[test]
fn gibberish_keeps_nouns() {
    let vocab = Vocabulary::bundled();
    let map = build_gibberish_map(1, &HashSet::new());
    let g = apply_gibberish(common::CONTAINER_PREFIX, &map, &vocab.slot_words()).unwrap();
    assert!(g.contains(" quilt "), "{g}");
    assert!(!g.starts_with("The "));
    let first = g.split(' ').next().unwrap();
    assert!(first.chars().next().unwrap().is_uppercase());
    assert_eq!(invert_gibberish(&g, &map), common::CONTAINER_PREFIX);
    assert!(matches!(
        apply_gibberish("The flibber contains a ball.", &map, &vocab.slot_words()),
        Err(RenderError::UnknownToken(_))
    ));
}

#[test]
fn gibberish_map_properties() {
    let vocab = Vocabulary::bundled();
    let avoid: HashSet<String> = vocab.lexicon().words().map(str::to_string).collect();
    let map = build_gibberish_map(3, &avoid);
    let pseudo: Vec<&str> = map.pseudo_words().collect();
    assert_eq!(pseudo.len(), TEMPLATE_WORDS.len());
    for p in &pseudo {
        assert!((3..=9).contains(&p.len()), "{p}");
        assert!(!avoid.contains(*p), "{p}");
        assert!(!TEMPLATE_WORDS.contains(p));
    }
    for w in TEMPLATE_WORDS {
        assert_eq!(map.english(map.get(w).unwrap()), Some(*w));
    }
    assert_eq!(map, build_gibberish_map(3, &avoid));
    assert_ne!(map, build_gibberish_map(4, &avoid));
    let back = GibberishMap::parse_tsv(&map.to_tsv()).unwrap();
    assert_eq!(back, map);
    assert_eq!(back.digest(), map.digest());
}

#[test]
fn gibberish_map_rejects_non_bijections() {
    let map = build_gibberish_map(3, &HashSet::new());
    let tsv = map.to_tsv();
    let mut lines: Vec<&str> = tsv.lines().collect();
    lines.pop();
    assert!(GibberishMap::parse_tsv(&lines.join("\n")).is_err());
    let g = map.get("the").unwrap().to_string();
    let clash = tsv.replacen(
        &format!("contains\t{}", map.get("contains").unwrap()),
        &format!("contains\t{g}"),
        1,
    );
    assert!(GibberishMap::parse_tsv(&clash).is_err());
}
