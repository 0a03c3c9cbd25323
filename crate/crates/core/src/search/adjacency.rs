//! Neighborhoods in the meet graph: for a line, the `q(q+1)^2` other lines
//! sharing a point with it.
//!
//! Neighbors are generated geometrically: for each point `P` of the line
//! and each point `Q` of a plane missing `P`, the join `PQ` is a line through
//! `P`, and every line through `P` arises exactly once. Small tables cache
//! the whole graph as flat neighbor lists.

use crate::enumeration::{LineId, LineTable};
use crate::exec::{self, Execution};
use crate::geometry::{join, plane_points, points_on, Point};

/// Neighbor-list caches above this many entries are not built.
pub const CACHE_MAX_ENTRIES: usize = 1 << 25;

/// `q(q+1)^2`, the number of lines meeting a given line.
pub fn meet_degree(q: u32) -> usize {
    let q = q as usize;
    q * (q + 1) * (q + 1)
}

/// A line table plus the meet-graph adjacency used by the greedy searches.
#[derive(Debug)]
pub struct SearchContext {
    table: LineTable,
    planes: [Vec<Point>; 4],
    degree: usize,
    cache: Option<Vec<LineId>>,
}

impl SearchContext {
    /// Caches the adjacency when it fits under [`CACHE_MAX_ENTRIES`].
    pub fn new(table: LineTable, exec: Execution) -> Self {
        let mut ctx = Self::uncached(table);
        if ctx.table.len().saturating_mul(ctx.degree) <= CACHE_MAX_ENTRIES {
            ctx.build_cache(exec);
        }
        ctx
    }

    /// Generates neighborhoods on demand, never caching.
    pub fn uncached(table: LineTable) -> Self {
        let f = table.field();
        let planes = std::array::from_fn(|k| plane_points(f, k));
        let degree = meet_degree(f.order());
        SearchContext {
            table,
            planes,
            degree,
            cache: None,
        }
    }

    fn build_cache(&mut self, exec: Execution) {
        let d = self.degree;
        let rows = exec::map_indices(exec, self.table.len(), |i| {
            let mut row = Vec::with_capacity(d);
            self.geometric_neighbors(i as LineId, |n| row.push(n));
            row
        });
        self.cache = Some(rows.concat());
    }

    pub fn table(&self) -> &LineTable {
        &self.table
    }

    pub fn into_table(self) -> LineTable {
        self.table
    }

    pub fn meet_degree(&self) -> usize {
        self.degree
    }

    pub fn is_cached(&self) -> bool {
        self.cache.is_some()
    }

    /// Calls `f` once for each line meeting `id` (excluding `id`).
    #[inline]
    pub fn for_each_neighbor(&self, id: LineId, f: impl FnMut(LineId)) {
        match &self.cache {
            Some(flat) => {
                let start = id as usize * self.degree;
                flat[start..start + self.degree].iter().copied().for_each(f);
            }
            None => self.geometric_neighbors(id, f),
        }
    }

    pub fn neighbors(&self, id: LineId) -> Vec<LineId> {
        let mut v = Vec::with_capacity(self.degree);
        self.for_each_neighbor(id, |n| v.push(n));
        v
    }

    fn geometric_neighbors(&self, id: LineId, mut f: impl FnMut(LineId)) {
        let field = self.table.field();
        let line = self.table.line(id);
        for p in points_on(field, &line) {
            let k = p.coords().iter().position(|&x| x != 0).unwrap();
            for other in &self.planes[k] {
                let m = join(field, &p, other);
                if m != line {
                    f(self.table.encode_canonical(&m));
                }
            }
        }
    }
}
