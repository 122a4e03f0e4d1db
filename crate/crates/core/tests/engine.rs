mod common;

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use delaygame::engine::*;
use delaygame::gadgets::{copy_check, guess_bit, pn_reach};
use delaygame::random::{pair_alphabet, plain_alphabet, random_automaton, random_family};
use delaygame::strategies::{ArenaInput, ArenaOutput, ConstantInput, ConstantOutput, RandomInput, RandomOutput};
use delaygame::{Acceptance, Automaton, Letter, StateSet, WeakMullerCondition};

use common::zielonka;

fn random_game_automaton(rng: &mut ChaCha8Rng) -> Automaton {
    let states = rng.gen_range(1..=6);
    let (inputs, outputs) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    random_automaton(rng, states, pair_alphabet(inputs, outputs), true, |r| {
        Acceptance::WeakMuller(WeakMullerCondition::Explicit(random_family(r, states)))
    })
}

/// Delay-free game on (state, visited set): Player I picks an input, then
/// Player O answers. Visited sets only grow, so the set a play settles on
/// decides it and a two-color parity game captures the condition.
fn delay_free_winner(a: &Automaton) -> Player {
    let inputs = a.alphabet().iter().filter_map(|l| if let Letter::Pair(i, _) = l { Some(i.clone()) } else { None });
    let mut ins: Vec<String> = Vec::new();
    let mut outs: Vec<String> = Vec::new();
    for i in inputs {
        if !ins.contains(&i) {
            ins.push(i);
        }
    }
    for l in a.alphabet() {
        if let Letter::Pair(_, o) = l {
            if !outs.contains(o) {
                outs.push(o.clone());
            }
        }
    }
    // node = (state, visited, pending input or None)
    type Node = (usize, StateSet, Option<usize>);
    let start: Node = (a.initial(), StateSet::singleton(a.num_states(), a.initial()), None);
    let mut index: HashMap<Node, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (q, seen, pending) = nodes[v].clone();
        let next: Vec<Node> = match pending {
            None => (0..ins.len()).map(|x| (q, seen.clone(), Some(x))).collect(),
            Some(x) => outs
                .iter()
                .map(|o| {
                    let l = a.letter_id(&Letter::pair(ins[x].as_str(), o.as_str())).unwrap();
                    let r = a.next(q, l);
                    (r, seen.with(r), None)
                })
                .collect(),
        };
        let mut out = Vec::new();
        for w in next {
            let id = *index.entry(w.clone()).or_insert_with(|| {
                nodes.push(w);
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            out.push(id);
        }
        if succ.len() <= v {
            succ.resize(v + 1, Vec::new());
        }
        succ[v] = out;
    }
    succ.resize(nodes.len(), Vec::new());
    let owner: Vec<Player> = nodes.iter().map(|n| if n.2.is_none() { Player::I } else { Player::O }).collect();
    let color: Vec<u32> = nodes
        .iter()
        .map(|n| if a.acceptance().accepts_occurrence(&n.1).unwrap() { 2 } else { 1 })
        .collect();
    zielonka(&owner, &color, &succ)[0]
}

#[test]
fn lookahead_one_matches_the_delay_free_game() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut wins = [0, 0];
    for _ in 0..50 {
        let a = random_game_automaton(&mut rng);
        let expected = delay_free_winner(&a);
        assert_eq!(solve_delay(&a, 1, DEFAULT_NODE_BUDGET).unwrap(), expected);
        wins[usize::from(expected == Player::O)] += 1;
    }
    assert!(wins[0] > 0 && wins[1] > 0, "both players should win some games: {wins:?}");
}

#[test]
fn arena_matches_an_independent_traversal() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let a = random_game_automaton(&mut rng);
        let k = rng.gen_range(1..=4);
        let arena = build_arena(&a, DelaySpec::constant(k).unwrap(), DEFAULT_NODE_BUDGET).unwrap();
        let p = arena.automaton();
        let io = arena.io();
        // queues as explicit vectors, oldest first
        let start = (p.initial(), Vec::<usize>::new());
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut edges = 0;
        while let Some((q, w)) = queue.pop_front() {
            let next: Vec<(usize, Vec<usize>)> = if w.len() < k {
                (0..io.num_inputs()).map(|x| (q, [w.clone(), vec![x]].concat())).collect()
            } else {
                (0..io.num_outputs()).map(|y| (p.next(q, io.letter(w[0], y)), w[1..].to_vec())).collect()
            };
            for n in next {
                edges += 1;
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        assert_eq!(arena.num_nodes(), seen.len());
        assert_eq!(arena.game().num_edges(), edges);
        for (q, w) in &seen {
            let node = ArenaNode { state: *q, len: w.len(), code: queue_code(w, io.num_inputs()) };
            assert!(arena.node_id(&node).is_some());
            assert_eq!(node.queue(io.num_inputs()), *w);
        }
        assert!((arena.num_nodes() as u128) <= node_bound(p.num_states(), io.num_inputs(), k));
    }
}

#[test]
fn solved_strategies_win_against_random_opponents() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = [0, 0];
    for _ in 0..40 {
        let a = random_game_automaton(&mut rng);
        let k = rng.gen_range(1..=3);
        let solved = solve_delay_game(&a, k, DEFAULT_NODE_BUDGET).unwrap();
        for seed in 0..100 {
            let t = match solved.winner() {
                Player::O => {
                    let mut i = RandomInput::from_seed(seed, 6);
                    simulate_play(&a, k, &mut i, &mut ArenaOutput::new(&solved), 10_000).unwrap()
                }
                Player::I => {
                    let mut o = RandomOutput::from_seed(seed, 6);
                    simulate_play(&a, k, &mut ArenaInput::new(&solved), &mut o, 10_000).unwrap()
                }
            };
            let expected = if solved.winner() == Player::O { Verdict::Accept } else { Verdict::Reject };
            assert_eq!(t.verdict, expected, "k={k} seed={seed}");
            checked[usize::from(solved.winner() == Player::O)] += 1;
        }
    }
    assert!(checked[0] > 0 && checked[1] > 0, "{checked:?}");
}

#[test]
fn constant_strategies_close_the_lasso_quickly() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let a = random_game_automaton(&mut rng);
        let k = rng.gen_range(1..=3);
        let (p, io) = prepare(&a).unwrap();
        let bound = p.num_states() * io.num_inputs().pow(k as u32);
        let x = rng.gen_range(0..io.num_inputs());
        let y = rng.gen_range(0..io.num_outputs());
        let t = simulate_play(&a, k, &mut ConstantInput(x), &mut ConstantOutput(y), bound + 1).unwrap();
        assert!(t.lasso.is_some());
        assert!(t.rounds <= bound + 1, "{} rounds, bound {bound}", t.rounds);
        assert_ne!(t.verdict, Verdict::Unresolved);
    }
}

#[test]
fn copy_check_arena_holds_every_queue() {
    for n in 1..=3 {
        let a = copy_check(n).unwrap();
        let k = n + 1;
        let arena = build_arena(&a, DelaySpec::constant(k).unwrap(), DEFAULT_NODE_BUDGET).unwrap();
        let full: HashSet<u64> =
            (0..arena.num_nodes()).map(|v| arena.node(v)).filter(|v| v.len == k).map(|v| v.code).collect();
        assert_eq!(full.len(), 2usize.pow(k as u32));
    }
}

#[test]
fn engine_errors_are_reported() {
    assert!(matches!(solve_delay(&guess_bit(2).unwrap(), 1, 1000), Err(EngineError::NonDeterministic)));
    assert!(matches!(solve_delay(&pn_reach(2).unwrap(), 0, 1000), Err(EngineError::ZeroLookahead)));
    assert!(matches!(
        solve_delay(&pn_reach(2).unwrap(), 8, 1000),
        Err(EngineError::Budget { budget: 1000, .. })
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let plain = random_automaton(&mut rng, 2, plain_alphabet(2), true, |_| Acceptance::Safety(StateSet::full(2)));
    assert!(matches!(solve_delay(&plain, 1, 1000), Err(EngineError::NotProductAlphabet)));
    let three = random_automaton(&mut rng, 3, pair_alphabet(2, 2), true, |_| Acceptance::Parity(vec![1, 2, 3]));
    assert!(matches!(solve_delay(&three, 1, 1000), Err(EngineError::UnsupportedColor(3))));
    let partial = random_automaton(&mut rng, 2, vec![Letter::pair("0", "a"), Letter::pair("1", "b")], true, |_| {
        Acceptance::Safety(StateSet::full(2))
    });
    assert!(matches!(solve_delay(&partial, 1, 1000), Err(EngineError::MissingLetter(_))));
}

#[test]
fn lookahead_report_stops_at_the_budget() {
    let a = pn_reach(2).unwrap();
    let full = minimal_lookahead(&a, 6, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(full.minimal, Some(5));
    assert!(full.stopped.is_none());
    let cut = minimal_lookahead(&a, 6, 200).unwrap();
    assert_eq!(cut.minimal, None);
    assert!(matches!(cut.stopped, Some(EngineError::Budget { .. })));
    assert!(cut.largest_decided().is_some_and(|k| k < 5));
}
