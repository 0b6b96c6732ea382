use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use ribe::algebra::{sample_dual_bases, GroupDescription, MockEngine, PairingEngine, Zq};
use ribe::codec::{self, Artifact};
use ribe::encoding::identity_scalar;
use ribe::revtree::{ku_nodes, revoked_ancestors, NodeId, RevocationList, ShareSource, TreeState};
use ribe::scheme::{self, DecryptionKey};
use ribe::sf_oracles::{self, NominalCoefficients};
use ribe::{Error, Variant};

use super::oracle::{element_residues, residues, Field};
use super::{lift, Check};
use crate::ensure;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn ids<E: PairingEngine>(e: &E, n: usize) -> Vec<E::Scalar> {
    (0..n)
        .map(|i| identity_scalar(e, format!("user-{i}").as_bytes()))
        .collect()
}

/// Register 5 users in an 8-leaf tree, revoke 3 of them at random epochs,
/// publish epochs 1..=10, then check every derivation and `messages`
/// random encryptions to non-revoked `(id, t)`.
pub fn consistency<E: PairingEngine>(
    group: &GroupDescription<E>,
    variant: Variant,
    seed: u64,
    messages: usize,
) -> Check {
    const USERS: usize = 5;
    const EPOCHS: u64 = 10;
    let mut rng = rng(seed);
    let e = group.engine();
    let (pp, mk, mut rl, mut tree) = lift(scheme::setup(
        group,
        variant,
        8,
        ShareSource::Random,
        &mut rng,
    ))?;
    let ids = ids(e, USERS);
    let sks = ids
        .iter()
        .map(|id| scheme::pri_key_gen(&pp, &mk, *id, &mut tree, &mut rng))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;

    let mut order: Vec<usize> = (0..USERS).collect();
    order.shuffle(&mut rng);
    let mut revoked_at = [None; USERS];
    for &u in &order[..3] {
        revoked_at[u] = Some(rng.gen_range(1..=EPOCHS));
    }

    let mut kus = Vec::new();
    for t in 1..=EPOCHS {
        for u in (0..USERS).filter(|u| revoked_at[*u] == Some(t)) {
            lift(scheme::key_rev(&ids[u], t, &mut rl, &tree))?;
        }
        kus.push(lift(scheme::key_upd(
            &pp, &mk, t, &mut rl, &mut tree, &mut rng,
        ))?);
    }

    let mut live = Vec::new();
    let mut bottoms = 0;
    for ku in &kus {
        let t = ku.time();
        for u in 0..USERS {
            let revoked = revoked_at[u].is_some_and(|r| r <= t);
            let dk = scheme::dec_key_gen(&sks[u], ku);
            ensure!(
                dk.is_none() == revoked,
                "user {u} at t={t}: revoked={revoked} but derivation gave {}",
                if dk.is_some() { "a key" } else { "bottom" }
            );
            if revoked {
                bottoms += 1;
            } else {
                live.push((u, t, dk.expect("checked above")));
            }
        }
    }
    ensure!(bottoms > 0, "schedule revoked nobody");

    for i in 0..messages {
        let (u, t, dk) = live.choose(&mut rng).expect("some user is live");
        let m = e.random_gt(&mut rng);
        let ct = lift(scheme::enc(&pp, ids[*u], *t, &m, &mut rng))?;
        let out = lift(scheme::dec(&pp, dk, &ct))?;
        ensure!(out == m, "message {i} to user {u} at t={t} did not decrypt");
    }
    Ok(format!(
        "{} live derivations, {bottoms} bottoms, {messages}/{messages} decryptions",
        live.len()
    ))
}

/// Exhaustive cover check over every revocation subset of every tree up to
/// `max_depth`. Leaf `k` of a subset is revoked at time `1 + k % 3`.
pub fn cover_sweep(max_depth: u32) -> Check {
    let mut cases = 0u64;
    for depth in 0..=max_depth {
        let tree = lift(TreeState::<MockEngine>::new(
            1 << depth,
            ShareSource::Random,
        ))?;
        let leaves: Vec<NodeId> = tree.leaves().collect();
        for mask in 0u64..(1 << leaves.len()) {
            let revoked: Vec<(NodeId, u64)> = leaves
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .enumerate()
                .map(|(k, (_, leaf))| (*leaf, 1 + k as u64 % 3))
                .collect();
            let rl = RevocationList::from_entries(revoked.iter().copied());
            let mut times: BTreeSet<u64> = BTreeSet::from([0]);
            for (_, t) in &revoked {
                times.insert(*t);
                times.insert(t + 1);
            }
            let mut prev_x = BTreeSet::new();
            for &t in &times {
                cases += 1;
                let y = ku_nodes(&tree, &rl, t);
                let active: BTreeSet<NodeId> = revoked
                    .iter()
                    .filter(|(_, ti)| *ti <= t)
                    .map(|(l, _)| *l)
                    .collect();
                for &leaf in &leaves {
                    let hits = lift(tree.path(leaf))?
                        .iter()
                        .filter(|n| y.binary_search(n).is_ok())
                        .count();
                    let want = usize::from(!active.contains(&leaf));
                    ensure!(
                        hits == want,
                        "depth {depth} mask {mask:#b} t={t}: leaf {leaf} covered {hits} times"
                    );
                }
                if active.is_empty() {
                    ensure!(
                        y == vec![tree.root()],
                        "depth {depth} mask {mask:#b} t={t}: empty revocation gave {y:?}"
                    );
                }
                let bound = 2 * revoked.len() * depth as usize + 1;
                ensure!(y.len() <= bound, "cover of {} exceeds {bound}", y.len());
                let x = revoked_ancestors(&tree, &rl, t);
                ensure!(prev_x.is_subset(&x), "revoked ancestors shrank at t={t}");
                prev_x = x;
            }
        }
    }
    Ok(format!("{cases} (tree, subset, time) cases"))
}

/// `d_i . d_j* = psi [i == j]` for `count` bases per dimension, checked with
/// u64 arithmetic.
pub fn dual_bases_mock(q: u64, dims: &[usize], count: usize, seed: u64) -> Check {
    let group = lift(GroupDescription::mock(q))?;
    let f = Field(q);
    let mut rng = rng(seed);
    for &n in dims {
        for k in 0..count {
            let b = lift(sample_dual_bases(&group, n, &mut rng))?;
            let psi = b.psi().value();
            ensure!(psi != 0, "psi is zero");
            for i in 0..n {
                for j in 0..n {
                    let ip = f.dot(&residues(b.basis(i)), &residues(b.dual(j)));
                    let want = if i == j { psi } else { 0 };
                    ensure!(
                        ip == want,
                        "n={n} basis {k}: d_{i}.d_{j}* = {ip}, want {want}"
                    );
                }
            }
        }
    }
    Ok(format!("{count} bases for each n in {dims:?} at q={q}"))
}

/// Pairing-level duality: `e(g1^{d_i}, g2^{d_j*}) = 1` for `i != j`, and
/// `e(g1^{d_1}, g2^{d_1*}) = e(g1, g2)^psi`.
pub fn dual_bases_pairing<E: PairingEngine>(
    group: &GroupDescription<E>,
    dims: &[usize],
    count: usize,
    seed: u64,
) -> Check {
    let e = group.engine();
    let one = e.gt_identity();
    let mut rng = rng(seed);
    let mut checked = 0;
    for &n in dims {
        for k in 0..count {
            let b = lift(sample_dual_bases(group, n, &mut rng))?;
            let g1: Vec<_> = (0..n).map(|i| group.vec_exp_g1(b.basis(i))).collect();
            let g2: Vec<_> = (0..n).map(|i| group.vec_exp_g2(b.dual(i))).collect();
            for (i, x) in g1.iter().enumerate() {
                for (j, y) in g2.iter().enumerate().filter(|(j, _)| *j != i) {
                    checked += 1;
                    ensure!(
                        lift(group.vec_pair(x, y))? == one,
                        "n={n} basis {k}: e(d_{i}, d_{j}*) is not the identity"
                    );
                }
            }
            ensure!(
                lift(group.vec_pair(&g1[0], &g2[0]))? == group.gt_generator() * b.psi(),
                "n={n} basis {k}: diagonal pairing is not e(g1,g2)^psi"
            );
        }
    }
    Ok(format!("{checked} off-diagonal vector pairings"))
}

struct Counts {
    pp: usize,
    mk: usize,
    key: usize,
    ct: usize,
    pairings: u64,
}

fn expected_counts(v: Variant) -> Counts {
    match v {
        Variant::Sxdh => Counts {
            pp: 19,
            mk: 19,
            key: 6,
            ct: 6,
            pairings: 12,
        },
        Variant::Dlin => Counts {
            pp: 55,
            mk: 55,
            key: 9,
            ct: 9,
            pairings: 18,
        },
    }
}

/// Structural element and pairing counts of one deployment.
pub fn table_counts<E: PairingEngine>(
    group: &GroupDescription<E>,
    variant: Variant,
    seed: u64,
) -> Check {
    let want = expected_counts(variant);
    let mut rng = rng(seed);
    let e = group.engine();
    let (pp, mk, mut rl, mut tree) = lift(scheme::setup(
        group,
        variant,
        8,
        ShareSource::Random,
        &mut rng,
    ))?;
    ensure!(
        pp.element_count() == want.pp,
        "PP has {} elements",
        pp.element_count()
    );
    ensure!(
        mk.element_count() == want.mk,
        "MK has {} elements",
        mk.element_count()
    );

    let ids = ids(e, 2);
    let sk = lift(scheme::pri_key_gen(&pp, &mk, ids[0], &mut tree, &mut rng))?;
    lift(scheme::pri_key_gen(&pp, &mk, ids[1], &mut tree, &mut rng))?;
    ensure!(
        sk.entries().len() == usize::from(tree.depth()) + 1,
        "SK has {} nodes",
        sk.entries().len()
    );
    for (node, k) in sk.entries() {
        ensure!(
            k.dim() == want.key,
            "SK node {node} has {} elements",
            k.dim()
        );
    }
    lift(scheme::key_rev(&ids[1], 1, &mut rl, &tree))?;
    let ku = lift(scheme::key_upd(&pp, &mk, 1, &mut rl, &mut tree, &mut rng))?;
    ensure!(
        ku.entries().len() == 3,
        "KU covers {} nodes",
        ku.entries().len()
    );
    for (node, k) in ku.entries() {
        ensure!(
            k.dim() == want.key,
            "KU node {node} has {} elements",
            k.dim()
        );
    }

    let m = e.random_gt(&mut rng);
    let ct = lift(scheme::enc(&pp, ids[0], 1, &m, &mut rng))?;
    ensure!(
        ct.source_element_count() == want.ct,
        "CT has {} source elements",
        ct.source_element_count()
    );
    let dk = scheme::dec_key_gen(&sk, &ku).ok_or("user 0 unexpectedly revoked")?;
    group.reset_pairing_count();
    let out = lift(scheme::dec(&pp, &dk, &ct))?;
    let pairings = group.pairing_count();
    ensure!(out == m, "decryption failed");
    ensure!(
        pairings == want.pairings,
        "decryption used {pairings} pairings"
    );
    Ok(format!(
        "{variant}: PP {} MK {} SK {}/node KU {}/node CT {}+1 pairings {pairings}",
        want.pp, want.mk, want.key, want.key, want.ct
    ))
}

/// Decryption outcomes for normal and semi-functional combinations, plus
/// nominal triples and their single-coefficient perturbations.
pub fn sf_matrix<E: PairingEngine>(
    group: &GroupDescription<E>,
    seeds: std::ops::Range<u64>,
) -> Check {
    let e = group.engine();
    let mut sf_sf_fail = 0;
    let total = seeds.end - seeds.start;
    for seed in seeds {
        let mut rng = rng(seed);
        let (pp, mk, _rl, mut tree) = lift(scheme::setup(
            group,
            Variant::Sxdh,
            4,
            ShareSource::Random,
            &mut rng,
        ))?;
        let node = NodeId::ROOT;
        let shares =
            lift(tree.get_or_create_shares(e, node, *mk.alpha(), Variant::Sxdh, &mut rng))?;
        let id = identity_scalar(e, format!("sf-{seed}").as_bytes());
        let t = rng.gen_range(0..1000u64);
        let m = e.random_gt(&mut rng);
        let psi = mk.bases().expect("fresh master key").psi();

        let r1 = e.random_scalar(&mut rng);
        let r2 = e.random_scalar(&mut rng);
        let normal = DecryptionKey::from_components(
            Variant::Sxdh,
            node,
            t,
            lift(scheme::private_key_node(&mk, &shares, id, &[r1]))?,
            lift(scheme::key_update_node(&mk, e, &shares, t, &[r2]))?,
        );
        let (k_id, key_tag) = lift(sf_oracles::pri_key_gen_sf(&pp, &mk, &shares, id, &mut rng))?;
        let (k_t, upd_tag) = lift(sf_oracles::key_upd_sf(&pp, &mk, &shares, t, &mut rng))?;
        let sf_keys = DecryptionKey::from_components(Variant::Sxdh, node, t, k_id, k_t);
        let normal_ct = lift(scheme::enc(&pp, id, t, &m, &mut rng))?;
        let (sf_ct, ct_tag) = lift(sf_oracles::encrypt_sf(&pp, &mk, id, t, &m, &mut rng))?;

        ensure!(
            lift(scheme::dec(&pp, &sf_keys, &normal_ct))? == m,
            "seed {seed}: normal CT under SF keys failed"
        );
        ensure!(
            lift(scheme::dec(&pp, &normal, &sf_ct))? == m,
            "seed {seed}: SF CT under normal keys failed"
        );
        let extra = sf_oracles::hidden_pairing_exponent(
            &key_tag.hidden,
            &upd_tag.hidden,
            &ct_tag.hidden,
            psi,
        );
        let predicts_failure = extra != e.zero();
        let failed = lift(scheme::dec(&pp, &sf_keys, &sf_ct))? != m;
        ensure!(
            predicts_failure == failed,
            "seed {seed}: predicate says fail={predicts_failure}, decryption fail={failed}"
        );
        sf_sf_fail += u64::from(failed);

        for coeffs in [
            NominalCoefficients::type1(e, &mut rng),
            NominalCoefficients::type2(e, &mut rng),
        ] {
            let tr = lift(sf_oracles::nominal_triple(
                &pp, &mk, &shares, node, id, t, &m, &coeffs, &mut rng,
            ))?;
            ensure!(
                lift(scheme::dec(&pp, &tr.dk, &tr.ct))? == m,
                "seed {seed}: nominal {:?} triple failed",
                coeffs.kind
            );
        }

        // Type I with nu_{4,1} bumped by one in the d_5* slot.
        let c1 = NominalCoefficients::type1(e, &mut rng);
        let ts = e.scalar_from_u64(t);
        let mut key_hidden = c1.key_hidden(id);
        key_hidden[1] = key_hidden[1] + e.one();
        let tr = lift(sf_oracles::hidden_triple(
            &pp,
            &mk,
            &shares,
            node,
            id,
            t,
            &m,
            (
                key_hidden,
                c1.update_hidden(ts),
                c1.ciphertext_hidden(id, ts),
            ),
            &mut rng,
        ))?;
        ensure!(
            lift(scheme::dec(&pp, &tr.dk, &tr.ct))? != m,
            "seed {seed}: perturbed Type I triple still decrypted"
        );

        // Type II with independent alpha in key and update.
        let mut c2 = NominalCoefficients::type2(e, &mut rng);
        c2.alpha_update = e.random_scalar(&mut rng);
        let tr = lift(sf_oracles::nominal_triple(
            &pp, &mk, &shares, node, id, t, &m, &c2, &mut rng,
        ))?;
        ensure!(
            lift(scheme::dec(&pp, &tr.dk, &tr.ct))? != m,
            "seed {seed}: Type II triple with independent alphas still decrypted"
        );
    }
    Ok(format!(
        "{total} seeds; SF/SF failed {sf_sf_fail}/{total} as predicted; nominal 2x{total} ok; perturbed 2x{total} fail"
    ))
}

fn dual_residues(mk: &scheme::MasterKey<MockEngine>) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let b = mk.bases().expect("fresh master key");
    (
        b.basis_vectors().iter().map(residues).collect(),
        b.dual_vectors().iter().map(residues).collect(),
    )
}

struct Tally {
    coefficients: u64,
    mismatches: Vec<String>,
}

impl Tally {
    fn compare(&mut self, what: &str, got: &[u64], want: &[u64]) {
        self.coefficients += want.len() as u64;
        if got != want {
            self.mismatches
                .push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }
}

/// Recomputes every key, update and ciphertext exponent (and the
/// semi-functional variants) from logged randomness at q = 101.
pub fn mock_exponent_oracle(seeds: std::ops::Range<u64>) -> Check {
    const Q: u64 = 101;
    let f = Field(Q);
    let group = lift(GroupDescription::mock(Q))?;
    let e = *group.engine();
    let mut tally = Tally {
        coefficients: 0,
        mismatches: Vec::new(),
    };
    let nseeds = seeds.end - seeds.start;

    for seed in seeds {
        for variant in [Variant::Sxdh, Variant::Dlin] {
            let mut rng = rng(seed);
            let (pp, mk, mut rl, mut tree) = lift(scheme::setup(
                &group,
                variant,
                4,
                ShareSource::Random,
                &mut rng,
            ))?;
            let (d, ds) = dual_residues(&mk);
            let psi = f.dot(&d[0], &ds[0]);
            let alpha = mk.alpha().value();
            tally.compare("gT^alpha", &[pp.gt_alpha().value()], &[f.mul(alpha, psi)]);
            for (i, v) in pp.basis().iter().enumerate() {
                tally.compare(&format!("PP d_{}", i + 1), &element_residues(v), &d[i]);
            }
            for (i, v) in mk.dual().iter().enumerate() {
                tally.compare(&format!("MK d_{}*", i + 1), &element_residues(v), &ds[i]);
            }

            let ids: Vec<Zq> = (0..3).map(|_| e.element(rng.gen_range(0..Q))).collect();
            for id in &ids {
                let (sk, trace) = lift(scheme::pri_key_gen_traced(
                    &pp, &mk, *id, &mut tree, &mut rng,
                ))?;
                for ((node, k), nr) in sk.entries().iter().zip(&trace) {
                    let s = tree.shares()[node];
                    let (a1, idv) = (s.alpha1.value(), id.value());
                    let r: Vec<u64> = nr.r.iter().map(Zq::value).collect();
                    let mut terms = vec![(0, f.add(a1, f.mul(r[0], idv))), (1, f.neg(r[0]))];
                    if variant == Variant::Dlin {
                        let a3 = s.alpha3.expect("dlin share").value();
                        terms.push((3, f.add(a3, f.mul(r[1], idv))));
                        terms.push((4, f.neg(r[1])));
                    }
                    tally.compare(
                        &format!("{variant} K_id node {node}"),
                        &element_residues(k),
                        &f.combine(&ds, &terms),
                    );
                }
            }

            for t in [1u64, 2, 3] {
                if t == 2 {
                    lift(scheme::key_rev(&ids[0], 2, &mut rl, &tree))?;
                }
                let (ku, trace) = lift(scheme::key_upd_traced(
                    &pp, &mk, t, &mut rl, &mut tree, &mut rng,
                ))?;
                for ((node, k), nr) in ku.entries().iter().zip(&trace) {
                    let s = tree.shares()[node];
                    let r: Vec<u64> = nr.r.iter().map(Zq::value).collect();
                    let mut terms = vec![
                        (0, f.add(s.alpha2.value(), f.mul(r[0], t))),
                        (2, f.neg(r[0])),
                    ];
                    if variant == Variant::Dlin {
                        let a3 = s.alpha3.expect("dlin share").value();
                        terms.push((3, f.add(f.neg(a3), f.mul(r[1], t))));
                        terms.push((5, f.neg(r[1])));
                    }
                    tally.compare(
                        &format!("{variant} K_t node {node} t={t}"),
                        &element_residues(k),
                        &f.combine(&ds, &terms),
                    );
                }
            }

            let t = rng.gen_range(0..Q);
            let m = e.random_gt(&mut rng);
            let (ct, z) = lift(scheme::enc_traced(&pp, ids[1], t, &m, &mut rng))?;
            let z: Vec<u64> = z.iter().map(Zq::value).collect();
            let idv = ids[1].value();
            let mut terms = vec![(0, z[0]), (1, f.mul(z[0], idv)), (2, f.mul(z[0], t))];
            if variant == Variant::Dlin {
                terms.extend([(3, z[1]), (4, f.mul(z[1], idv)), (5, f.mul(z[1], t))]);
            }
            tally.compare(
                &format!("{variant} C0"),
                &element_residues(ct.c0()),
                &f.combine(&d, &terms),
            );
            tally.compare(
                &format!("{variant} C"),
                &[ct.mask().value()],
                &[f.add(m.value(), f.mul(f.mul(alpha, psi), z[0]))],
            );

            if variant == Variant::Sxdh {
                sf_exponents(&pp, &mk, &mut tree, &f, &d, &ds, psi, &mut rng, &mut tally)?;
            }
        }
    }
    ensure!(
        tally.mismatches.is_empty(),
        "{} mismatches, first: {}",
        tally.mismatches.len(),
        tally.mismatches[0]
    );
    Ok(format!(
        "{nseeds} seeds x 2 schemes: {} coefficients, 0 mismatches",
        tally.coefficients
    ))
}

#[allow(clippy::too_many_arguments)]
fn sf_exponents(
    pp: &scheme::PublicParams<MockEngine>,
    mk: &scheme::MasterKey<MockEngine>,
    tree: &mut TreeState<MockEngine>,
    f: &Field,
    d: &[Vec<u64>],
    ds: &[Vec<u64>],
    psi: u64,
    rng: &mut ChaCha20Rng,
    tally: &mut Tally,
) -> Result<(), String> {
    let e = pp.group().engine();
    let node = NodeId::ROOT;
    let s = lift(tree.get_or_create_shares(e, node, *mk.alpha(), Variant::Sxdh, rng))?;
    let id = e.element(rng.gen_range(0..e.modulus()));
    let t = rng.gen_range(0..e.modulus());
    let m = e.random_gt(rng);
    let (idv, a1, a2) = (id.value(), s.alpha1.value(), s.alpha2.value());
    let hidden = |h: &[Zq; 3]| -> Vec<(usize, u64)> {
        h.iter()
            .enumerate()
            .map(|(k, c)| (3 + k, c.value()))
            .collect()
    };

    let (k_id, key_tag) = lift(sf_oracles::pri_key_gen_sf(pp, mk, &s, id, rng))?;
    let r = key_tag.randomness.value();
    let mut terms = vec![(0, f.add(a1, f.mul(r, idv))), (1, f.neg(r))];
    terms.extend(hidden(&key_tag.hidden));
    tally.compare("SF K_id", &element_residues(&k_id), &f.combine(ds, &terms));

    let (k_t, upd_tag) = lift(sf_oracles::key_upd_sf(pp, mk, &s, t, rng))?;
    let r = upd_tag.randomness.value();
    let mut terms = vec![(0, f.add(a2, f.mul(r, t))), (2, f.neg(r))];
    terms.extend(hidden(&upd_tag.hidden));
    tally.compare("SF K_t", &element_residues(&k_t), &f.combine(ds, &terms));

    let (ct, ct_tag) = lift(sf_oracles::encrypt_sf(pp, mk, id, t, &m, rng))?;
    let z = ct_tag.randomness.value();
    let mut terms = vec![(0, z), (1, f.mul(z, idv)), (2, f.mul(z, t))];
    terms.extend(hidden(&ct_tag.hidden));
    tally.compare("SF C0", &element_residues(ct.c0()), &f.combine(d, &terms));

    // m / Dec = e(g1,g2)^{sum (nu_{i,1} + nu_{i,2}) chi_i psi}; GT is additive here.
    let dk = DecryptionKey::from_components(Variant::Sxdh, node, t, k_id, k_t);
    let out = lift(scheme::dec(pp, &dk, &ct))?;
    let extra = (0..3).fold(0, |acc, i| {
        let nu = f.add(key_tag.hidden[i].value(), upd_tag.hidden[i].value());
        f.add(acc, f.mul(f.mul(nu, ct_tag.hidden[i].value()), psi))
    });
    tally.compare(
        "SF quotient",
        &[f.add(m.value(), f.neg(out.value()))],
        &[extra],
    );

    for coeffs in [
        NominalCoefficients::type1(e, rng),
        NominalCoefficients::type2(e, rng),
    ] {
        let tr = lift(sf_oracles::nominal_triple(
            pp, mk, &s, node, id, t, &m, &coeffs, rng,
        ))?;
        let (nk, nu, chi, ak, au) = (
            coeffs.nu_key.value(),
            coeffs.nu_update.value(),
            coeffs.chi.value(),
            coeffs.alpha_key.value(),
            coeffs.alpha_update.value(),
        );
        tally.compare(
            "nominal key hidden",
            &tr.key_hidden.map(|c| c.value()),
            &[f.add(ak, f.mul(nk, idv)), f.neg(nk), 0],
        );
        tally.compare(
            "nominal update hidden",
            &tr.update_hidden.map(|c| c.value()),
            &[f.add(f.neg(au), f.mul(nu, t)), 0, f.neg(nu)],
        );
        tally.compare(
            "nominal ct hidden",
            &tr.ct_hidden.map(|c| c.value()),
            &[chi, f.mul(chi, idv), f.mul(chi, t)],
        );
        tally.compare(
            "nominal decrypt",
            &[lift(scheme::dec(pp, &tr.dk, &tr.ct))?.value()],
            &[m.value()],
        );
    }
    Ok(())
}

fn roundtrip<E: PairingEngine, A: Artifact<E> + PartialEq + std::fmt::Debug>(
    group: &GroupDescription<E>,
    a: &A,
    what: &str,
) -> Result<(), String> {
    let bytes = codec::encode(group, a);
    let back: A = lift(codec::decode(group, &bytes))?;
    ensure!(&back == a, "{what}: decoded value differs");
    ensure!(
        codec::encode(group, &back) == bytes,
        "{what}: re-encoding differs"
    );
    let mut flipped = bytes.clone();
    flipped[4] ^= 0x01;
    ensure!(
        matches!(
            codec::decode::<E, A>(group, &flipped),
            Err(Error::UnsupportedVersion(_))
        ),
        "{what}: flipped version byte accepted"
    );
    Ok(())
}

/// Round-trips every artifact type and the authority state.
pub fn serialization<E: PairingEngine>(group: &GroupDescription<E>, seed: u64) -> Check {
    let e = group.engine();
    let mut kinds = 0;
    for (variant, source) in [
        (Variant::Sxdh, ShareSource::Random),
        (Variant::Dlin, ShareSource::Prf([seed as u8; 32])),
    ] {
        let mut rng = rng(seed);
        let (pp, mk, mut rl, mut tree) = lift(scheme::setup(group, variant, 4, source, &mut rng))?;
        let ids = ids(e, 3);
        let mut sks = Vec::new();
        for id in &ids {
            sks.push(lift(scheme::pri_key_gen(
                &pp, &mk, *id, &mut tree, &mut rng,
            ))?);
        }
        lift(scheme::key_rev(&ids[2], 1, &mut rl, &tree))?;
        let ku = lift(scheme::key_upd(&pp, &mk, 1, &mut rl, &mut tree, &mut rng))?;
        let dk = scheme::dec_key_gen(&sks[0], &ku).ok_or("user 0 revoked")?;
        let ct = lift(scheme::enc(
            &pp,
            ids[0],
            1,
            &e.random_gt(&mut rng),
            &mut rng,
        ))?;

        roundtrip(group, &pp, "PP")?;
        roundtrip(group, &mk.clone().without_bases(), "MK")?;
        roundtrip(group, &sks[1], "SK")?;
        roundtrip(group, &ku, "KU")?;
        roundtrip(group, &dk, "DK")?;
        roundtrip(group, &ct, "CT")?;

        let state = codec::encode_state(group, variant, &tree, &rl);
        let (v2, tree2, rl2) = lift(codec::decode_state(group, &state))?;
        ensure!(
            v2 == variant && tree2 == tree && rl2 == rl,
            "{variant} state: decoded value differs"
        );
        ensure!(
            codec::encode_state(group, v2, &tree2, &rl2) == state,
            "{variant} state: re-encoding differs"
        );
        let mut flipped = state.clone();
        flipped[4] ^= 0x01;
        ensure!(
            matches!(
                codec::decode_state(group, &flipped),
                Err(Error::UnsupportedVersion(_))
            ),
            "{variant} state: flipped version accepted"
        );
        kinds += 7;
    }
    Ok(format!(
        "{kinds} artifact round trips on {}",
        group.descriptor()
    ))
}
