//! Acceptance criteria. Each prints one PASS/FAIL line; the target fails if
//! any criterion does.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use textworlds::harness::{
    build_curriculum, grid_evaluate, grid_preset, materialize_stage, oracle_baseline, score_records, stage_draws,
    to_jsonl, DatasetManifest, Predictor, CURRICULUM_NAMES,
};
use textworlds::metrics::{bleu, score_pair};
use textworlds::render::{
    apply_gibberish, build_gibberish_map, invert_gibberish, parse_final_state, render_container_state,
    render_located_state_with, render_prefix, render_target, English,
};
use textworlds::rng::item_rng;
use textworlds::scenariogen::{gen_dataset, GenConfig, PathLenMode, Scenario, Span, Task};
use textworlds::world::{
    apply_move, execute_route, simulate_hard_object, ContainerState, Coord, Direction, GridMap, HardObjectEpisode,
    MoveAction, Pick, Placement, Route,
};
use textworlds::Vocabulary;

use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, ok: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail.into())
    }
}

fn within(elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    check(
        elapsed < limit,
        format!("{detail}; {:.2}s", elapsed.as_secs_f64()),
        format!(
            "{detail}; took {:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

fn table_examples() -> Outcome {
    let t = Instant::now();
    for (label, world, prefix, target) in common::example_rows() {
        let p = render_prefix(&world).map_err(|e| e.to_string())?;
        let g = render_target(&world).map_err(|e| e.to_string())?;
        if p != prefix {
            return Err(format!("{label} prefix: got `{p}`"));
        }
        if g != target {
            return Err(format!("{label} target: got `{g}`"));
        }
    }
    within(t.elapsed(), Duration::from_secs(1), "4/4 rows byte-exact".into())
}

fn oracle_self_consistency(vocab: &Vocabulary) -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    for task in Task::ALL {
        let cfg = GenConfig {
            count: 10_000,
            seed: 2024,
            ..GenConfig::training(task)
        };
        let data = gen_dataset(&cfg, vocab).map_err(|e| e.to_string())?;
        let preds = oracle_baseline(&data).map_err(|e| e.to_string())?;
        let r = score_records(&data, &preds).map_err(|e| e.to_string())?;
        let a = r.aggregate;
        if !(a.count == 10_000 && a.exact == 1.0 && a.substring == 1.0 && a.bleu == 1.0) {
            return Err(format!("{task}: {a:?}"));
        }
        parts.push(task.name());
    }
    within(
        t.elapsed(),
        Duration::from_secs(60),
        format!("exact = substring = bleu = 1.0 on 10000 each of {}", parts.join(", ")),
    )
}

fn fig2_grid(vocab: &Vocabulary) -> Outcome {
    let (spec, cfg) = grid_preset("fig2", Task::Container).map_err(|e| e.to_string())?;
    let r = grid_evaluate(&spec, &cfg, vocab, &Predictor::Oracle).map_err(|e| e.to_string())?;
    let grid = r.grid.as_ref().ok_or("no grid")?;
    let all_one = grid.cells.iter().all(|c| {
        c.aggregate
            .is_some_and(|a| a.count == 100 && a.exact == 1.0 && a.substring == 1.0 && a.bleu == 1.0)
    });
    let csv = grid.to_csv("exact").map_err(|e| e.to_string())?;
    let lines: Vec<&str> = csv.lines().collect();
    let data_rows = lines.len() - 1;
    let data_cols = lines[0].split(',').count() - 1;
    let cells_one = lines[1..].iter().all(|l| l.split(',').skip(1).all(|v| v == "1"));
    check(
        r.examples.len() == 7200 && grid.cells.len() == 72 && all_one && data_rows == 18 && data_cols == 4 && cells_one,
        format!(
            "{} scenarios, 72 cells at 1.0, CSV {data_rows}x{data_cols}",
            r.examples.len()
        ),
        format!(
            "{} scenarios, {} cells, all one {all_one}, CSV {data_rows}x{data_cols}",
            r.examples.len(),
            grid.cells.len()
        ),
    )
}

fn path_lengths(vocab: &Vocabulary) -> Outcome {
    let mut notes = Vec::new();
    for task in [Task::NavRoute, Task::NavResult, Task::HardObject] {
        let cfg = GenConfig {
            n_rooms: Span::new(3, 8),
            path_len: Span::new(1, 5),
            path_len_mode: PathLenMode::UniformLength,
            count: 10_000,
            seed: 61,
            ..GenConfig::training(task)
        };
        let data = gen_dataset(&cfg, vocab).map_err(|e| e.to_string())?;
        let mut hist = [0usize; 5];
        for s in &data {
            hist[s.meta.path_len.unwrap() as usize - 1] += 1;
        }
        let fr: Vec<f64> = hist.iter().map(|h| *h as f64 / 10_000.0).collect();
        if fr.iter().any(|f| (f - 0.2).abs() > 0.02) {
            return Err(format!("{task} uniform buckets {fr:?}"));
        }
        let worst = fr.iter().map(|f| (f - 0.2).abs()).fold(0.0, f64::max);
        notes.push(format!("{task} max dev {worst:.4}"));

        let cfg = GenConfig {
            path_len_mode: PathLenMode::Incidental,
            ..cfg
        };
        let data = gen_dataset(&cfg, vocab).map_err(|e| e.to_string())?;
        let short = data.iter().filter(|s| s.meta.path_len.unwrap() <= 2).count() as f64 / 10_000.0;
        if short < 0.6 {
            return Err(format!("{task} incidental share with path_len <= 2 is {short}"));
        }
        notes.push(format!("incidental <=2 {short:.3}"));
    }
    Ok(notes.join(", "))
}

fn random_state<R: Rng>(rng: &mut R, names: &[&str], objects: &[&str]) -> ContainerState {
    let k = rng.gen_range(1..=5);
    let chosen: Vec<&str> = names.choose_multiple(rng, k).copied().collect();
    let mut bins: Vec<Vec<String>> = vec![Vec::new(); k];
    for _ in 0..rng.gen_range(0..=12) {
        bins[rng.gen_range(0..k)].push(objects.choose(rng).unwrap().to_string());
    }
    ContainerState::new(chosen.into_iter().zip(bins).map(|(n, o)| (n.to_string(), o))).unwrap()
}

fn round_trips(vocab: &Vocabulary) -> Outcome {
    let names: Vec<&str> = vocab
        .wordset("containers")
        .unwrap()
        .words
        .iter()
        .map(String::as_str)
        .collect();
    let rooms: Vec<&str> = vocab
        .wordset("rooms")
        .unwrap()
        .words
        .iter()
        .map(String::as_str)
        .collect();
    let objects: Vec<&str> = vocab
        .wordset("train-all")
        .unwrap()
        .words
        .iter()
        .map(String::as_str)
        .collect();
    let mut rng = item_rng(55);
    let mut failures = 0;
    for i in 0..10_000 {
        let st = random_state(&mut rng, &names, &objects);
        let parsed = parse_final_state(&render_container_state(&st));
        if !matches!(&parsed, Ok(p) if p.state == st && p.placements.is_empty()) {
            failures += 1;
        }
        if i % 2 == 0 {
            let placements: Vec<Placement> = st
                .names()
                .zip(rooms.choose_multiple(&mut rng, st.containers.len()))
                .map(|(c, r)| Placement {
                    container: c.to_string(),
                    room: r.to_string(),
                })
                .collect();
            let parsed = parse_final_state(&render_located_state_with(&st, &placements, &English));
            if !matches!(&parsed, Ok(p) if p.state == st && p.placements == placements) {
                failures += 1;
            }
        }
    }
    if failures > 0 {
        return Err(format!("{failures} state round-trip failures"));
    }

    let mut avoid = vocab.slot_words();
    avoid.extend(vocab.lexicon().words().map(str::to_string));
    let map = build_gibberish_map(7, &avoid);
    let mut scenarios: Vec<Scenario> = Vec::new();
    for task in Task::ALL {
        let cfg = GenConfig {
            count: 250,
            seed: 9,
            ..GenConfig::training(task)
        };
        scenarios.extend(gen_dataset(&cfg, vocab).map_err(|e| e.to_string())?);
    }
    let mut g_fail = 0;
    let mut slot_changes = 0;
    for s in &scenarios {
        let slots: HashSet<String> = s
            .world
            .slot_words()
            .iter()
            .flat_map(|w| w.split(' ').map(str::to_string))
            .collect();
        for text in [&s.prefix, &s.target] {
            let g = apply_gibberish(text, &map, &slots).map_err(|e| e.to_string())?;
            if invert_gibberish(&g, &map) != *text {
                g_fail += 1;
            }
            let (a, b): (Vec<&str>, Vec<&str>) = (text.split(' ').collect(), g.split(' ').collect());
            if a.len() != b.len() {
                g_fail += 1;
                continue;
            }
            for (x, y) in a.iter().zip(&b) {
                let core = x.trim_end_matches(['.', ',']);
                if slots.contains(core) && map.get(&core.to_lowercase()).is_none() && x != y {
                    slot_changes += 1;
                }
            }
        }
    }
    check(
        g_fail == 0 && slot_changes == 0,
        format!(
            "10000 states + 5000 located forms, {} scenarios gibberished, 0 failures",
            scenarios.len()
        ),
        format!("{g_fail} gibberish round-trip failures, {slot_changes} slot tokens changed"),
    )
}

fn metric_cross_check(vocab: &Vocabulary) -> Outcome {
    let mut pairs: Vec<(String, String)> = Vec::new();
    let cfg = GenConfig {
        count: 25,
        seed: 31,
        ..GenConfig::training(Task::Container)
    };
    let data = gen_dataset(&cfg, vocab).map_err(|e| e.to_string())?;
    let mut rng = item_rng(32);
    for (i, s) in data.iter().enumerate() {
        let words: Vec<&str> = s.target.split(' ').collect();
        let cut = rng.gen_range(1..words.len());
        pairs.push((words[..cut].join(" "), s.target.clone()));
        let mut shuffled = words.clone();
        shuffled.shuffle(&mut rng);
        pairs.push((shuffled.join(" "), s.target.clone()));
        pairs.push((s.prefix.clone(), s.target.clone()));
        pairs.push((data[(i + 1) % data.len()].target.clone(), s.target.clone()));
    }
    let worst = pairs
        .iter()
        .map(|(p, t)| (bleu(p, t) - common::reference_bleu(p, t)).abs())
        .fold(0.0, f64::max);
    if pairs.len() != 100 || worst > 1e-6 {
        return Err(format!("{} pairs, max |diff| {worst:e}", pairs.len()));
    }
    let s = score_pair(common::TRUNCATED_ROUTE_PREDICTION, common::TRUNCATED_ROUTE_TARGET);
    check(
        s.exact == 0 && s.substring == 1.0 && s.bleu < 1.0,
        format!(
            "100 pairs, max |diff| {worst:.1e}; truncated route exact 0, substring 1, bleu {:.4}",
            s.bleu
        ),
        format!("truncated route scored {s:?}"),
    )
}

/// Every 3-room map up to translation: A at the origin, B next to A, C next
/// to A or B.
fn three_room_maps() -> Vec<GridMap> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for db in Direction::ALL {
        let b = Coord(0, 0).step(db);
        for (base, anchor) in [(Coord(0, 0), "A"), (b, "B")] {
            for dc in Direction::ALL {
                let c = base.step(dc);
                if c == Coord(0, 0) || c == b {
                    continue;
                }
                if seen.insert((b, c)) {
                    let mut m = GridMap::from_coords([("A", Coord(0, 0))]);
                    m.attach("B", db, "A").unwrap();
                    m.attach("C", dc, anchor).unwrap();
                    out.push(m);
                }
            }
        }
    }
    out
}

fn all_routes(max_len: usize) -> Vec<Route> {
    let mut out = Vec::new();
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for r in &frontier {
            for d in Direction::ALL {
                let mut r2: Vec<Direction> = r.clone();
                r2.push(d);
                out.push(Route(r2.clone()));
                next.push(r2);
            }
        }
        frontier = next;
    }
    out
}

fn compositional_sweep() -> Outcome {
    let t = Instant::now();
    let routes = all_routes(4);
    let objects = ["o1", "o2", "o3"];
    let (mut episodes, mut mismatches, mut valid) = (0u64, 0u64, 0u64);
    for map in three_room_maps() {
        for (ra, rb) in [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)] {
            let placements = vec![
                Placement {
                    container: "bin".into(),
                    room: map.name(ra).into(),
                },
                Placement {
                    container: "box".into(),
                    room: map.name(rb).into(),
                },
            ];
            for k in 1..=3 {
                for mask in 0..(1u32 << k) {
                    let (mut bin, mut boxx) = (Vec::new(), Vec::new());
                    for (j, o) in objects.iter().take(k).enumerate() {
                        if mask >> j & 1 == 0 {
                            bin.push(o.to_string());
                        } else {
                            boxx.push(o.to_string());
                        }
                    }
                    let st = ContainerState::new([("bin".to_string(), bin), ("box".to_string(), boxx)]).unwrap();
                    for c in &st.containers {
                        for obj in &c.objects {
                            for route in &routes {
                                episodes += 1;
                                let ep = HardObjectEpisode {
                                    map: map.clone(),
                                    placements: placements.clone(),
                                    state: st.clone(),
                                    pick: Pick {
                                        object: obj.clone(),
                                        container: c.name.clone(),
                                    },
                                    route: route.clone(),
                                };
                                let direct = simulate_hard_object(&ep).map(|o| o.state).ok();
                                let composed = ep
                                    .room_of(&c.name)
                                    .and_then(|start| execute_route(&map, start, route))
                                    .ok()
                                    .and_then(|end| ep.container_in(end))
                                    .filter(|dst| *dst != c.name)
                                    .and_then(|dst| {
                                        apply_move(
                                            &st,
                                            &MoveAction {
                                                object: obj.clone(),
                                                src: c.name.clone(),
                                                dst: dst.to_string(),
                                            },
                                        )
                                        .ok()
                                    });
                                if direct.is_some() {
                                    valid += 1;
                                }
                                if direct != composed {
                                    mismatches += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if mismatches > 0 {
        return Err(format!("{mismatches} mismatches over {episodes} episodes"));
    }
    within(
        t.elapsed(),
        Duration::from_secs(30),
        format!(
            "{} maps, {episodes} episodes ({valid} ending in the other container), 0 mismatches",
            three_room_maps().len()
        ),
    )
}

fn determinism(vocab: &Vocabulary) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut configs: Vec<GenConfig> = Task::ALL
        .iter()
        .map(|t| GenConfig {
            count: 2000,
            seed: 77,
            ..GenConfig::training(*t)
        })
        .collect();
    configs.push(textworlds::harness::dataset_preset("sys-extrap", None).map_err(|e| e.to_string())?);
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
        .max(4);
    for (i, cfg) in configs.iter().enumerate() {
        let text = to_jsonl(&gen_dataset(cfg, vocab).map_err(|e| e.to_string())?);
        let manifest = DatasetManifest::new(format!("d{i}"), cfg, &text);
        let path = dir.path().join(format!("d{i}.toml"));
        std::fs::write(&path, manifest.to_toml().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let reloaded = DatasetManifest::load(&path).map_err(|e| e.to_string())?;
        for n in [1, threads] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| e.to_string())?;
            let again = pool
                .install(|| gen_dataset(&reloaded.config, vocab))
                .map_err(|e| e.to_string())?;
            let again = to_jsonl(&again);
            if again != text || !reloaded.verify(&again) {
                return Err(format!("{} differs at {n} threads", cfg.task));
            }
        }
    }
    Ok(format!(
        "{} datasets regenerated from manifests at 1 and {threads} threads, identical bytes and digests",
        configs.len()
    ))
}

fn curricula(vocab: &Vocabulary) -> Outcome {
    let mut totals = Vec::new();
    for name in CURRICULUM_NAMES {
        let m = build_curriculum(name).map_err(|e| e.to_string())?;
        if m.total_steps() != 3000 {
            return Err(format!("{name} totals {}", m.total_steps()));
        }
        totals.push(format!("{name}={}", m.total_steps()));
    }
    let m = build_curriculum("ContNav5050-HardObj").map_err(|e| e.to_string())?;
    let draws = stage_draws(&m, 0, 2000).map_err(|e| e.to_string())?;
    let share = draws.iter().filter(|k| **k == 0).count() as f64 / 2000.0;
    let built = materialize_stage(&m, 0, 2000, vocab).map_err(|e| e.to_string())?;
    let built_share = built.iter().filter(|s| s.task == Task::Container).count() as f64 / 2000.0;
    check(
        (share - 0.5).abs() <= 0.02 && built_share == share,
        format!("{}; ContNav5050 stage 1 container share {share:.4}", totals.join(", ")),
        format!("stage 1 container share {share} (materialized {built_share})"),
    )
}

fn main() {
    let vocab = Vocabulary::bundled();
    let criteria: Vec<Criterion> = vec![
        ("1 example-table fidelity", Box::new(table_examples)),
        (
            "2 oracle self-consistency",
            Box::new(|| oracle_self_consistency(&vocab)),
        ),
        ("3 fig2 grid shape", Box::new(|| fig2_grid(&vocab))),
        ("4 path-length distribution", Box::new(|| path_lengths(&vocab))),
        ("5 round-trips", Box::new(|| round_trips(&vocab))),
        ("6 metric cross-validation", Box::new(|| metric_cross_check(&vocab))),
        ("7 compositional oracle sweep", Box::new(compositional_sweep)),
        ("8 determinism", Box::new(|| determinism(&vocab))),
        ("9 curriculum manifests", Box::new(|| curricula(&vocab))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
