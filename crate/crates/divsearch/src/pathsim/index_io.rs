//! Compact binary on-disk form of a [`PathIndex`].
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic   8  b"DSPIDX1\n"
//! u64     total_paths (R)
//! u64     path_length (T)
//! u64     seed
//! u64     graph node count
//! u64     graph edge count
//! per node: u64 list length, then that many u32 path ids (sorted, unique)
//! ```
//!
//! The node and edge counts bind an index file to the graph it was sampled
//! from; [`PathIndex::verify_graph`] checks them before queries run.

use std::io::Write;

use super::PathIndex;
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

const MAGIC: &[u8; 8] = b"DSPIDX1\n";

struct Cursor<'a> {
    data: &'a [u8],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.data.len() - self.at < n {
            return Err(Error::Decode("truncated input".into()));
        }
        let s = &self.data[self.at..self.at + n];
        self.at += n;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

impl PathIndex {
    /// Writes the binary form, binding it to `g`'s shape.
    pub fn write_binary<W: Write>(&self, g: &AttributedGraph, mut out: W) -> std::io::Result<()> {
        assert_eq!(self.node_count(), g.node_count(), "index/graph mismatch");
        out.write_all(MAGIC)?;
        out.write_all(&(self.total_paths() as u64).to_le_bytes())?;
        out.write_all(&(self.path_length() as u64).to_le_bytes())?;
        out.write_all(&self.seed().to_le_bytes())?;
        out.write_all(&(g.node_count() as u64).to_le_bytes())?;
        out.write_all(&(g.edge_count() as u64).to_le_bytes())?;
        for u in 0..self.node_count() {
            let list = &self.memberships[u];
            out.write_all(&(list.len() as u64).to_le_bytes())?;
            for &p in list {
                out.write_all(&p.to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Decodes and validates the binary form, returning the index together
    /// with the (node, edge) counts of the graph it was built from.
    pub fn read_binary(data: &[u8]) -> Result<(PathIndex, usize, usize)> {
        let mut cur = Cursor { data, at: 0 };
        if cur.take(8)? != MAGIC {
            return Err(Error::Decode("bad magic".into()));
        }
        let total_paths = cur.u64()? as usize;
        let path_length = cur.u64()? as usize;
        let seed = cur.u64()?;
        let node_count = cur.u64()? as usize;
        let edge_count = cur.u64()? as usize;
        if total_paths == 0 || total_paths > u32::MAX as usize {
            return Err(Error::Decode(format!("bad path count {total_paths}")));
        }
        if path_length == 0 {
            return Err(Error::Decode("bad path length 0".into()));
        }
        // Every node record needs at least its 8-byte length.
        if node_count > (data.len() - cur.at) / 8 {
            return Err(Error::Decode("node count exceeds input size".into()));
        }

        let mut memberships = Vec::with_capacity(node_count);
        let mut total_entries: u64 = 0;
        for u in 0..node_count {
            let len = cur.u64()? as usize;
            if len > (data.len() - cur.at) / 4 {
                return Err(Error::Decode(format!("node {u}: truncated list")));
            }
            total_entries += len as u64;
            let mut list = Vec::with_capacity(len);
            let mut prev: Option<u32> = None;
            for _ in 0..len {
                let p = cur.u32()?;
                if p as usize >= total_paths {
                    return Err(Error::Decode(format!("node {u}: path id {p} >= R")));
                }
                if prev.is_some_and(|q| q >= p) {
                    return Err(Error::Decode(format!("node {u}: list not sorted")));
                }
                prev = Some(p);
                list.push(p);
            }
            memberships.push(list);
        }
        if cur.at != data.len() {
            return Err(Error::Decode("trailing bytes".into()));
        }
        // A walk of T steps touches at most T+1 distinct nodes.
        if total_entries > (total_paths as u64) * (path_length as u64 + 1) {
            return Err(Error::Decode(
                "membership entries exceed R * (T + 1)".into(),
            ));
        }
        Ok((
            PathIndex::from_parts(memberships, total_paths, path_length, seed),
            node_count,
            edge_count,
        ))
    }

    /// Checks that this index was sampled from a graph shaped like `g`.
    pub fn verify_graph(&self, g: &AttributedGraph, stored_edge_count: usize) -> Result<()> {
        if self.node_count() != g.node_count() || stored_edge_count != g.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "index was built for a graph with {} nodes / {} edges, got {} / {}",
                self.node_count(),
                stored_edge_count,
                g.node_count(),
                g.edge_count()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathsim::{build_path_index, SamplingParams};

    #[test]
    fn binary_roundtrip() {
        let g = crate::graph::generate_er(25, 0.2, 4, 1, 3).unwrap();
        let params = SamplingParams::new(4, 150, 77).unwrap();
        let index = build_path_index(&g, &params).unwrap();
        let mut buf = Vec::new();
        index.write_binary(&g, &mut buf).unwrap();
        let (back, nodes, edges) = PathIndex::read_binary(&buf).unwrap();
        assert_eq!(back, index);
        assert_eq!(nodes, 25);
        assert_eq!(edges, g.edge_count());
        back.verify_graph(&g, edges).unwrap();
    }

    #[test]
    fn rejects_corrupted_input() {
        let g = crate::graph::generate_er(10, 0.3, 0, 0, 3).unwrap();
        let params = SamplingParams::new(3, 50, 1).unwrap();
        let index = build_path_index(&g, &params).unwrap();
        let mut buf = Vec::new();
        index.write_binary(&g, &mut buf).unwrap();

        assert!(PathIndex::read_binary(&buf[..7]).is_err());
        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(PathIndex::read_binary(&bad_magic).is_err());
        let mut truncated = buf.clone();
        truncated.truncate(buf.len() - 3);
        assert!(PathIndex::read_binary(&truncated).is_err());
        let mut trailing = buf.clone();
        trailing.push(0);
        assert!(PathIndex::read_binary(&trailing).is_err());

        let other = crate::graph::generate_er(11, 0.3, 0, 0, 3).unwrap();
        let (decoded, _, edges) = PathIndex::read_binary(&buf).unwrap();
        assert!(decoded.verify_graph(&other, edges).is_err());
    }
}
