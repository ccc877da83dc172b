/// Disjoint sets over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Dense labels `0..k`, numbered by first occurrence in index order.
    pub fn canonical_labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels[x] = root_label[r];
        }
        (labels, next)
    }
}

/// Union-find that also tracks a relative orientation bit per element.
///
/// `parity(x)` is the orientation of `x` relative to its root. A union that
/// contradicts earlier unions marks the whole set as conflicted.
#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    conflict: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            conflict: vec![false; n],
        }
    }

    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Declare `a` and `b` identified with relative orientation `flip`.
    pub fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != flip {
                self.conflict[ra] = true;
            }
            return;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ flip;
        self.conflict[ra] |= self.conflict[rb];
    }

    pub fn is_conflicted(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.conflict[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels_follow_first_occurrence() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 1);
        uf.union(3, 0);
        let (labels, k) = uf.canonical_labels();
        assert_eq!(k, 3);
        assert_eq!(labels, vec![0, 1, 2, 0, 1]);
    }

    #[test]
    fn parity_detects_conflict() {
        let mut uf = ParityUnionFind::new(3);
        uf.union(0, 1, true);
        uf.union(1, 2, true);
        assert!(!(uf.find(2).1 ^ uf.find(0).1));
        assert!(!uf.is_conflicted(0));
        uf.union(0, 2, true);
        assert!(uf.is_conflicted(1));
    }
}
