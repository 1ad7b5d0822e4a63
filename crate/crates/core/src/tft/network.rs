//! Dense tensors over a coefficient ring and their contraction along a network of edges.

use rand::Rng;

use super::graph::HalfEdge;
use crate::exactalg::Ring;

/// Dense `rank^arity` array, row-major with leg 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitude<R> {
    rank: usize,
    arity: usize,
    data: Vec<R>,
}

impl<R: Ring> Amplitude<R> {
    pub fn from_fn(rank: usize, arity: usize, mut f: impl FnMut(&[usize]) -> R) -> Self {
        let mut idx = vec![0; arity];
        let mut data = Vec::with_capacity(rank.pow(arity as u32));
        loop {
            data.push(f(&idx));
            if !advance(&mut idx, rank) {
                break;
            }
        }
        Amplitude { rank, arity, data }
    }

    pub fn scalar(x: R) -> Self {
        Amplitude { rank: 0, arity: 0, data: vec![x] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> &R {
        &self.data[self.flat(idx)]
    }

    /// The value of a zero-leg amplitude.
    pub fn as_scalar(&self) -> Option<&R> {
        (self.arity == 0).then(|| &self.data[0])
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.rank + i)
    }

    /// All multi-indices in storage order.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        let mut idx = vec![0; self.arity];
        let mut out = Vec::with_capacity(self.data.len());
        loop {
            out.push(idx.clone());
            if !advance(&mut idx, self.rank) {
                break;
            }
        }
        out
    }

    /// New axis `i` is old axis `order[i]`.
    pub fn transpose(&self, order: &[usize]) -> Self {
        debug_assert_eq!(order.len(), self.arity);
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return self.clone();
        }
        let mut stride = vec![0; self.arity];
        let mut s = 1;
        for k in (0..self.arity).rev() {
            stride[k] = s;
            s *= self.rank;
        }
        let new_stride: Vec<usize> = order.iter().map(|&o| stride[o]).collect();
        Self::from_fn(self.rank, self.arity, |idx| {
            let old: usize = idx.iter().zip(&new_stride).map(|(i, s)| i * s).sum();
            self.data[old].clone()
        })
    }

    pub fn outer(&self, other: &Self) -> Self {
        let rank = if self.arity == 0 { other.rank } else { self.rank };
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a.times(b));
            }
        }
        Amplitude { rank, arity: self.arity + other.arity, data }
    }

    pub fn scaled_by(&self, c: &R) -> Self {
        Amplitude {
            rank: self.rank,
            arity: self.arity,
            data: self.data.iter().map(|x| x.times(c)).collect(),
        }
    }

    /// First multi-index where the two amplitudes differ.
    pub fn first_difference(&self, other: &Self) -> Option<Vec<usize>> {
        if self.arity != other.arity {
            return Some(Vec::new());
        }
        let pos = self.data.iter().zip(&other.data).position(|(a, b)| a != b)?;
        let mut idx = vec![0; self.arity];
        let mut p = pos;
        for k in (0..self.arity).rev() {
            idx[k] = p % self.rank;
            p /= self.rank;
        }
        Some(idx)
    }
}

fn advance(idx: &mut [usize], rank: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < rank {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// A tensor whose axes are labelled by half-edges.
#[derive(Debug, Clone)]
pub(crate) struct Node<R> {
    pub axes: Vec<HalfEdge>,
    pub amp: Amplitude<R>,
}

impl<R: Ring> Node<R> {
    fn axis(&self, h: HalfEdge) -> usize {
        self.axes.iter().position(|&a| a == h).expect("axis present")
    }

    /// Moves `front` axes to the front and `back` axes to the back, keeping the rest in order.
    fn arrange(&self, front: &[HalfEdge], back: &[HalfEdge]) -> Node<R> {
        let mut order: Vec<usize> = front.iter().map(|&h| self.axis(h)).collect();
        let fixed: Vec<usize> = back.iter().map(|&h| self.axis(h)).collect();
        let middle: Vec<usize> = (0..self.axes.len())
            .filter(|k| !order.contains(k) && !fixed.contains(k))
            .collect();
        order.extend(middle);
        order.extend(fixed);
        Node {
            axes: order.iter().map(|&k| self.axes[k]).collect(),
            amp: self.amp.transpose(&order),
        }
    }
}

/// Contraction data: the copairing matrix and an optional factor applied once per edge.
pub(crate) struct Contractor<'a, R> {
    pub copairing: &'a [Vec<R>],
    pub edge_factor: Option<&'a R>,
    pub like: &'a R,
}

impl<R: Ring> Contractor<'_, R> {
    fn finish(&self, x: R) -> R {
        match self.edge_factor {
            Some(f) => x.times(f),
            None => x,
        }
    }

    /// Joins axis `a` of `left` to axis `b` of `right`.
    fn merge(&self, left: &Node<R>, a: HalfEdge, right: &Node<R>, b: HalfEdge) -> Node<R> {
        let r = self.copairing.len();
        let left = left.arrange(&[], &[a]);
        let right = right.arrange(&[b], &[]);
        let outer_l = left.amp.data.len() / r;
        let outer_r = right.amp.data.len() / r;
        // w[i][beta] = sum_j cop[i][j] right[j][beta]
        let mut w = vec![self.like.zero_like(); r * outer_r];
        for i in 0..r {
            for j in 0..r {
                let c = &self.copairing[i][j];
                if c.is_zero() {
                    continue;
                }
                for beta in 0..outer_r {
                    let x = &right.amp.data[j * outer_r + beta];
                    if !x.is_zero() {
                        w[i * outer_r + beta] = w[i * outer_r + beta].plus(&c.times(x));
                    }
                }
            }
        }
        let mut data = vec![self.like.zero_like(); outer_l * outer_r];
        for alpha in 0..outer_l {
            for i in 0..r {
                let x = &left.amp.data[alpha * r + i];
                if x.is_zero() {
                    continue;
                }
                for beta in 0..outer_r {
                    let y = &w[i * outer_r + beta];
                    if !y.is_zero() {
                        let slot = &mut data[alpha * outer_r + beta];
                        *slot = slot.plus(&x.times(y));
                    }
                }
            }
        }
        let mut axes: Vec<HalfEdge> = left.axes[..left.axes.len() - 1].to_vec();
        axes.extend_from_slice(&right.axes[1..]);
        Node {
            amp: Amplitude {
                rank: r,
                arity: axes.len(),
                data: data.into_iter().map(|x| self.finish(x)).collect(),
            },
            axes,
        }
    }

    /// Joins two axes of the same tensor.
    fn trace(&self, node: &Node<R>, a: HalfEdge, b: HalfEdge) -> Node<R> {
        let r = self.copairing.len();
        let node = node.arrange(&[], &[a, b]);
        let outer = node.amp.data.len() / (r * r);
        let data = (0..outer)
            .map(|alpha| {
                let mut acc = self.like.zero_like();
                for i in 0..r {
                    for j in 0..r {
                        let x = &node.amp.data[(alpha * r + i) * r + j];
                        let c = &self.copairing[i][j];
                        if !x.is_zero() && !c.is_zero() {
                            acc = acc.plus(&x.times(c));
                        }
                    }
                }
                self.finish(acc)
            })
            .collect();
        let axes = node.axes[..node.axes.len() - 2].to_vec();
        Node {
            amp: Amplitude { rank: r, arity: axes.len(), data },
            axes,
        }
    }

    /// Contracts every edge, then takes the outer product of what is left and orders the
    /// axes as `legs`. With `rng`, each step picks uniformly among edges whose result stays
    /// small; without it, the step with the smallest result (first in order) is taken.
    pub fn contract<G: Rng + ?Sized>(
        &self,
        nodes: Vec<Node<R>>,
        edges: &[(HalfEdge, HalfEdge)],
        legs: &[HalfEdge],
        mut rng: Option<&mut G>,
    ) -> Amplitude<R> {
        const OPEN_AXES_CAP: usize = 7;
        let mut owner = std::collections::HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            for &h in &n.axes {
                owner.insert(h, i);
            }
        }
        let mut nodes: Vec<Option<Node<R>>> = nodes.into_iter().map(Some).collect();
        let mut remaining: Vec<(HalfEdge, HalfEdge)> = edges.to_vec();
        while !remaining.is_empty() {
            let sizes: Vec<usize> = remaining
                .iter()
                .map(|(a, b)| {
                    let (na, nb) = (owner[a], owner[b]);
                    let la = nodes[na].as_ref().expect("live").axes.len();
                    if na == nb {
                        la - 2
                    } else {
                        la + nodes[nb].as_ref().expect("live").axes.len() - 2
                    }
                })
                .collect();
            let best = *sizes.iter().min().expect("nonempty");
            let pick = match rng.as_deref_mut() {
                Some(rng) => {
                    let cap = best.max(OPEN_AXES_CAP);
                    let ok: Vec<usize> = (0..sizes.len()).filter(|&k| sizes[k] <= cap).collect();
                    ok[rng.gen_range(0..ok.len())]
                }
                None => sizes.iter().position(|&s| s == best).expect("present"),
            };
            let (a, b) = remaining.remove(pick);
            let (na, nb) = (owner[&a], owner[&b]);
            let merged = if na == nb {
                self.trace(nodes[na].as_ref().expect("live"), a, b)
            } else {
                let right = nodes[nb].take().expect("live");
                self.merge(nodes[na].as_ref().expect("live"), a, &right, b)
            };
            for &h in &merged.axes {
                owner.insert(h, na);
            }
            nodes[na] = Some(merged);
        }
        let mut result = Node {
            axes: Vec::new(),
            amp: Amplitude::scalar(self.like.one_like()),
        };
        for n in nodes.into_iter().flatten() {
            result = Node {
                amp: result.amp.outer(&n.amp),
                axes: result.axes.into_iter().chain(n.axes).collect(),
            };
        }
        result.amp.rank = self.copairing.len();
        result.arrange(legs, &[]).amp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;
    use crate::exactalg::Rational;

    #[test]
    fn transpose_and_index() {
        let a = Amplitude::from_fn(2, 3, |i| int((i[0] * 4 + i[1] * 2 + i[2]) as i64));
        assert_eq!(*a.get(&[1, 0, 1]), int(5));
        let t = a.transpose(&[2, 0, 1]);
        // t[x, y, z] = a[y, z, x]
        assert_eq!(*t.get(&[1, 1, 0]), *a.get(&[1, 0, 1]));
        assert_eq!(a.first_difference(&a), None);
        assert_eq!(a.first_difference(&t), Some(vec![0, 0, 1]));
    }

    #[test]
    fn matrix_product_by_contraction() {
        // identity copairing turns a merge into a matrix product
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let m = Amplitude::from_fn(2, 2, |i| int((i[0] * 2 + i[1] + 1) as i64));
        let c = Contractor::<Rational> { copairing: &id, edge_factor: None, like: &int(0) };
        let nodes = vec![
            Node { axes: vec![0, 1], amp: m.clone() },
            Node { axes: vec![2, 3], amp: m.clone() },
        ];
        let out = c.contract::<rand::rngs::ThreadRng>(nodes, &[(1, 2)], &[0, 3], None);
        // [[1,2],[3,4]]^2 = [[7,10],[15,22]]
        assert_eq!(out.data(), &[int(7), int(10), int(15), int(22)]);
        let nodes = vec![Node { axes: vec![0, 1], amp: m }];
        let tr = c.contract::<rand::rngs::ThreadRng>(nodes, &[(0, 1)], &[], None);
        assert_eq!(tr.as_scalar(), Some(&int(5)));
    }
}
