use num_traits::Float;
use serde::Serialize;

use super::FactorAutomaton;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthEstimate<T> {
    #[serde(rename = "eigenvalue")]
    pub dominant_eigenvalue: T,
    pub states: usize,
    pub iterations: usize,
    pub residual: T,
}

/// Perron root of the live-state transition matrix `A`.
///
/// The root of `A` is the largest root among its strongly connected
/// components, so each nontrivial component is iterated separately. Inside a
/// component power iteration runs on `A + I`, which is primitive there, so it
/// converges geometrically even when the component is periodic. Stops once
/// successive 1-norm ratios differ by less than `tol`, or after
/// `max_iterations` per component.
pub fn growth_rate<T: Float>(a: &FactorAutomaton, tol: T, max_iterations: usize) -> GrowthEstimate<T> {
    let (n, edges) = a.live_edges();
    let mut best = GrowthEstimate {
        dominant_eigenvalue: T::zero(),
        states: n,
        iterations: 0,
        residual: T::zero(),
    };
    let comp = components(n, &edges);
    let num_comps = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_comps];
    for (s, &c) in comp.iter().enumerate() {
        members[c].push(s);
    }
    let mut local = vec![usize::MAX; n];
    for group in &members {
        for (i, &s) in group.iter().enumerate() {
            local[s] = i;
        }
    }
    let mut inner: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_comps];
    for &(s, t) in &edges {
        if comp[s] == comp[t] {
            inner[comp[s]].push((local[s], local[t]));
        }
    }
    for (c, group) in members.iter().enumerate() {
        if inner[c].is_empty() {
            continue;
        }
        let est = power_iteration(group.len(), &inner[c], tol, max_iterations);
        best.iterations += est.iterations;
        if est.dominant_eigenvalue > best.dominant_eigenvalue {
            best.dominant_eigenvalue = est.dominant_eigenvalue;
            best.residual = est.residual;
        }
    }
    best
}

fn power_iteration<T: Float>(
    n: usize,
    edges: &[(usize, usize)],
    tol: T,
    max_iterations: usize,
) -> GrowthEstimate<T> {
    let count = T::from(n).expect("state count fits the scalar type");
    let mut x = vec![T::one() / count; n];
    let mut y = vec![T::zero(); n];
    let mut lambda = T::zero();
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        y.copy_from_slice(&x);
        for &(s, t) in edges {
            y[t] = y[t] + x[s];
        }
        // x is kept at unit 1-norm, so the new norm is the ratio
        let norm = y.iter().fold(T::zero(), |acc, &v| acc + v);
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        let done = iterations > 1 && (norm - lambda).abs() < tol;
        lambda = norm;
        if done {
            break;
        }
    }
    let mu = lambda - T::one();
    let mut ax = vec![T::zero(); n];
    for &(s, t) in edges {
        ax[t] = ax[t] + x[s];
    }
    let residual = ax
        .iter()
        .zip(&x)
        .fold(T::zero(), |acc, (&a, &b)| acc + (a - mu * b).abs());
    GrowthEstimate {
        dominant_eigenvalue: mu,
        states: n,
        iterations,
        residual,
    }
}

/// Strongly connected component id per vertex (Kosaraju, iterative).
fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut out_adj = vec![Vec::new(); n];
    let mut in_adj = vec![Vec::new(); n];
    for &(s, t) in edges {
        out_adj[s].push(t);
        in_adj[t].push(s);
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i < out_adj[v].len() {
                stack.push((v, i + 1));
                let t = out_adj[v][i];
                if !seen[t] {
                    seen[t] = true;
                    stack.push((t, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = next;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in &in_adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = next;
                    stack.push(u);
                }
            }
        }
        next += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn auto(ws: &[&str]) -> FactorAutomaton {
        let fs: Vec<Word> = ws.iter().map(|w| Word::parse(w, 2).unwrap()).collect();
        FactorAutomaton::new(2, &fs)
    }

    #[test]
    fn golden_ratio() {
        let g = growth_rate(&auto(&["000", "111"]), 1e-12, 100_000);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((g.dominant_eigenvalue - phi).abs() < 1e-6, "{g:?}");
        let g32 = growth_rate(&auto(&["000", "111"]), 1e-6f32, 100_000);
        assert!((g32.dominant_eigenvalue - phi as f32).abs() < 1e-3);
    }

    #[test]
    fn no_00_is_fibonacci_and_periodic_is_fine() {
        let g = growth_rate(&auto(&["00"]), 1e-12, 100_000);
        assert!((g.dominant_eigenvalue - 1.618_033_988_75).abs() < 1e-6);
        // only (01)^ω survives: A is a 2-cycle, eigenvalue 1
        let g = growth_rate(&auto(&["00", "11"]), 1e-12, 100_000);
        assert!((g.dominant_eigenvalue - 1.0).abs() < 1e-9, "{g:?}");
    }

    #[test]
    fn finite_language_has_zero_root() {
        let g = growth_rate(&auto(&["0", "11"]), 1e-12, 100_000);
        assert!(g.dominant_eigenvalue.abs() < 1e-9);
        let g = growth_rate(&auto(&[""]), 1e-12, 10);
        assert_eq!(g.states, 0);
    }
}
