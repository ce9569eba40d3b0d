//! Static in-memory Chord ring for reputation-query cost accounting.
//!
//! The ring never churns: it exists to count how many routing messages a
//! reputation lookup needs under finger-table routing, against the constant
//! two-message round trip of asking the VO coordinator directly. Identifiers
//! live in `[0, 2^m)` and every node keeps `m` fingers, finger `i` pointing
//! at `successor(id + 2^i)`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ring parameters: identifier bits and the occupied node ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingConfig {
    pub bits: u32,
    pub node_ids: Vec<u64>,
}

impl RingConfig {
    pub fn new(bits: u32, node_ids: Vec<u64>) -> Self {
        Self { bits, node_ids }
    }

    /// Builds the ring, materializing every finger table.
    pub fn build(&self) -> Result<Ring> {
        if self.bits == 0 || self.bits > 62 {
            return Err(Error::Ring(format!(
                "identifier bits {} out of range",
                self.bits
            )));
        }
        if self.node_ids.is_empty() {
            return Err(Error::Ring("ring needs at least one node".into()));
        }
        let size = 1u64 << self.bits;
        let mut ids = self.node_ids.clone();
        ids.sort_unstable();
        for pair in ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Ring(format!("duplicate node id {}", pair[0])));
            }
        }
        if let Some(&max) = ids.last() {
            if max >= size {
                return Err(Error::Ring(format!(
                    "node id {max} exceeds identifier space of {} bits",
                    self.bits
                )));
            }
        }
        let nodes = ids
            .iter()
            .map(|&id| {
                let fingers = (0..self.bits)
                    .map(|i| successor_in(&ids, id.wrapping_add(1 << i) & (size - 1)))
                    .collect();
                ChordNode { id, fingers }
            })
            .collect();
        Ok(Ring {
            bits: self.bits,
            ids,
            nodes,
        })
    }
}

/// A ring member and its finger table.
#[derive(Debug, Clone)]
pub struct ChordNode {
    pub id: u64,
    /// `fingers[i] = successor(id + 2^i mod 2^m)`; `fingers[0]` is the
    /// immediate successor.
    pub fingers: Vec<u64>,
}

/// Immutable ring with precomputed finger tables.
#[derive(Debug, Clone)]
pub struct Ring {
    bits: u32,
    ids: Vec<u64>,
    nodes: Vec<ChordNode>,
}

/// Result of one lookup: the owning node and the number of routing messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lookup {
    pub owner: u64,
    pub hops: u32,
}

/// How a reputation query reaches the record holder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryModel {
    /// Ask the VO coordinator directly: request plus reply.
    Coordinator,
    /// Route over the ring to the key owner, then one query message.
    Dht,
}

impl Ring {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of ids in the identifier space, `2^m`.
    pub fn id_space(&self) -> u64 {
        1u64 << self.bits
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node_ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn nodes(&self) -> &[ChordNode] {
        &self.nodes
    }

    pub fn contains(&self, id: u64) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    fn node(&self, id: u64) -> &ChordNode {
        let ix = self
            .ids
            .binary_search(&id)
            .expect("caller checked membership");
        &self.nodes[ix]
    }

    /// First node at or clockwise after `key`.
    pub fn successor(&self, key: u64) -> u64 {
        successor_in(&self.ids, key)
    }

    fn predecessor_of(&self, id: u64) -> u64 {
        let ix = self
            .ids
            .binary_search(&id)
            .expect("caller checked membership");
        if ix == 0 {
            self.ids[self.ids.len() - 1]
        } else {
            self.ids[ix - 1]
        }
    }

    /// Greedy closest-preceding-finger routing from `start` to the owner of
    /// `key`. A hop is one forwarded message; a start that already owns the
    /// key answers in zero hops.
    pub fn lookup(&self, start: u64, key: u64) -> Result<Lookup> {
        if key >= self.id_space() {
            return Err(Error::KeyOutOfRange(key));
        }
        if !self.contains(start) {
            return Err(Error::NotInRing(start));
        }
        let mut current = start;
        let mut hops = 0u32;
        loop {
            if in_open_closed(key, self.predecessor_of(current), current) {
                return Ok(Lookup {
                    owner: current,
                    hops,
                });
            }
            let node = self.node(current);
            let succ = node.fingers[0];
            if in_open_closed(key, current, succ) {
                return Ok(Lookup {
                    owner: succ,
                    hops: hops + 1,
                });
            }
            let mut next = closest_preceding_finger(node, key);
            if next == current {
                next = succ;
            }
            current = next;
            hops += 1;
            debug_assert!(hops <= self.bits + 1, "finger routing failed to converge");
        }
    }
}

/// Messages needed for one reputation query about `target` starting at
/// `start`, under the given query model.
pub fn trust_query_cost(model: QueryModel, ring: &Ring, start: u64, target: u64) -> Result<u64> {
    match model {
        QueryModel::Coordinator => Ok(2),
        QueryModel::Dht => {
            let lookup = ring.lookup(start, target)?;
            Ok(u64::from(lookup.hops) + 1)
        }
    }
}

fn successor_in(sorted_ids: &[u64], key: u64) -> u64 {
    match sorted_ids.binary_search(&key) {
        Ok(_) => key,
        Err(ix) if ix == sorted_ids.len() => sorted_ids[0],
        Err(ix) => sorted_ids[ix],
    }
}

/// Wrap-aware `key ∈ (from, to]`; a degenerate interval covers the whole
/// ring, which is what a single-node ring needs.
fn in_open_closed(key: u64, from: u64, to: u64) -> bool {
    if from < to {
        from < key && key <= to
    } else if from > to {
        key > from || key <= to
    } else {
        true
    }
}

/// Wrap-aware `x ∈ (from, to)` exclusive on both ends.
fn in_open_open(x: u64, from: u64, to: u64) -> bool {
    if from < to {
        from < x && x < to
    } else if from > to {
        x > from || x < to
    } else {
        x != from
    }
}

fn closest_preceding_finger(node: &ChordNode, key: u64) -> u64 {
    for &finger in node.fingers.iter().rev() {
        if in_open_open(finger, node.id, key) {
            return finger;
        }
    }
    node.id
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(bits: u32, ids: &[u64]) -> Ring {
        RingConfig::new(bits, ids.to_vec()).build().unwrap()
    }

    #[test]
    fn single_node_points_every_finger_at_itself() {
        let ring = ring(4, &[3]);
        assert!(ring.nodes()[0].fingers.iter().all(|&f| f == 3));
    }

    #[test]
    fn two_node_successors_partition_the_ring() {
        let ring = ring(4, &[0, 8]);
        for key in 1..=8 {
            assert_eq!(ring.successor(key), 8, "key {key}");
        }
        for key in (9..16).chain([0]) {
            assert_eq!(ring.successor(key), 0, "key {key}");
        }
    }

    #[test]
    fn dense_ring_fingers_are_direct_offsets() {
        let ids: Vec<u64> = (0..16).collect();
        let ring = ring(4, &ids);
        for node in ring.nodes() {
            for (i, &finger) in node.fingers.iter().enumerate() {
                assert_eq!(finger, (node.id + (1 << i)) % 16);
            }
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        assert!(matches!(
            RingConfig::new(4, vec![1, 1]).build(),
            Err(Error::Ring(_))
        ));
    }

    #[test]
    fn oversized_id_rejected() {
        assert!(matches!(
            RingConfig::new(4, vec![16]).build(),
            Err(Error::Ring(_))
        ));
    }

    #[test]
    fn empty_ring_rejected() {
        assert!(matches!(
            RingConfig::new(4, vec![]).build(),
            Err(Error::Ring(_))
        ));
    }

    #[test]
    fn owner_lookup_is_zero_hops() {
        let ring = ring(4, &[2, 9]);
        // node 2 owns (9, 2]: keys 10..15, 0, 1, 2.
        assert_eq!(ring.lookup(2, 1).unwrap(), Lookup { owner: 2, hops: 0 });
        assert_eq!(ring.lookup(2, 2).unwrap(), Lookup { owner: 2, hops: 0 });
    }

    #[test]
    fn single_node_ring_answers_everything_locally() {
        let ring = ring(4, &[5]);
        for key in 0..16 {
            assert_eq!(ring.lookup(5, key).unwrap(), Lookup { owner: 5, hops: 0 });
        }
    }

    #[test]
    fn lookup_rejects_bad_arguments() {
        let ring = ring(4, &[1, 2]);
        assert!(matches!(ring.lookup(1, 16), Err(Error::KeyOutOfRange(16))));
        assert!(matches!(ring.lookup(7, 3), Err(Error::NotInRing(7))));
    }

    #[test]
    fn routing_agrees_with_linear_scan_oracle() {
        // Brute-force owner: minimal clockwise distance from key to a node.
        fn oracle(ids: &[u64], key: u64, size: u64) -> u64 {
            *ids.iter()
                .min_by_key(|&&id| id.wrapping_sub(key) & (size - 1))
                .unwrap()
        }
        let ids = [1u64, 5, 9, 13, 22, 40, 41, 63];
        let ring = ring(6, &ids);
        for &start in &ids {
            for key in 0..64 {
                let lookup = ring.lookup(start, key).unwrap();
                assert_eq!(
                    lookup.owner,
                    oracle(&ids, key, 64),
                    "start {start} key {key}"
                );
                assert!(lookup.hops <= 6);
            }
        }
    }

    #[test]
    fn coordinator_query_cost_is_constant() {
        let ring = ring(6, &[0, 10, 20, 30]);
        for &start in ring.node_ids() {
            assert_eq!(
                trust_query_cost(QueryModel::Coordinator, &ring, start, 20).unwrap(),
                2
            );
        }
    }

    #[test]
    fn dht_query_cost_counts_hops_plus_one() {
        let single = ring(4, &[5]);
        assert_eq!(trust_query_cost(QueryModel::Dht, &single, 5, 3).unwrap(), 1);

        let multi = ring(6, &[1, 5, 9, 13, 22, 40, 41, 63]);
        let lookup = multi.lookup(1, 41).unwrap();
        assert_eq!(
            trust_query_cost(QueryModel::Dht, &multi, 1, 41).unwrap(),
            u64::from(lookup.hops) + 1
        );
    }
}
