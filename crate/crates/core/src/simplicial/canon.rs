//! Canonical forms by individualisation and refinement.
//!
//! The structure is described by vertex colours and a pair-label matrix used
//! only for refinement; the caller's serializer defines what is compared at
//! the leaves. The result is the least serialization over every vertex order
//! the search can reach, and the search is invariant under relabelling, so
//! two inputs share a code exactly when some isomorphism maps one to the other.

pub(crate) struct CanonInput<'a> {
    pub n: usize,
    /// Invariant colour per vertex.
    pub colors: &'a [u64],
    /// Row-major `n x n` pair labels, symmetric.
    pub pair: &'a [u32],
    /// Vertices individualised first, in this order.
    pub fixed: &'a [usize],
}

type Partition = Vec<Vec<usize>>;

pub(crate) fn canonical_form(input: &CanonInput<'_>, serialize: &dyn Fn(&[usize]) -> Vec<u8>) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let partition = initial_partition(input);
    search(input, partition, serialize, &mut best);
    best.unwrap_or_else(|| serialize(&[]))
}

fn initial_partition(input: &CanonInput<'_>) -> Partition {
    let mut cells: Partition = input.fixed.iter().map(|&v| vec![v]).collect();
    let mut rest: Vec<usize> = (0..input.n).filter(|v| !input.fixed.contains(v)).collect();
    rest.sort_by_key(|&v| input.colors[v]);
    let mut start = 0;
    while start < rest.len() {
        let c = input.colors[rest[start]];
        let mut end = start;
        while end < rest.len() && input.colors[rest[end]] == c {
            end += 1;
        }
        cells.push(rest[start..end].to_vec());
        start = end;
    }
    cells
}

fn refine(input: &CanonInput<'_>, partition: &mut Partition) {
    let n = input.n;
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, cell) in partition.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(partition.len());
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = &input.pair[v * n..(v + 1) * n];
                    let mut sig: Vec<(usize, u32)> = row
                        .iter()
                        .enumerate()
                        .filter(|&(u, &l)| u != v && l != 0)
                        .map(|(u, &l)| (cell_of[u], l))
                        .collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            let before = next.len();
            while start < keyed.len() {
                let mut end = start + 1;
                while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                    end += 1;
                }
                next.push(keyed[start..end].iter().map(|(_, v)| *v).collect());
                start = end;
            }
            if next.len() - before > 1 {
                changed = true;
            }
        }
        *partition = next;
        if !changed {
            return;
        }
    }
}

fn search(input: &CanonInput<'_>, mut partition: Partition, serialize: &dyn Fn(&[usize]) -> Vec<u8>, best: &mut Option<Vec<u8>>) {
    refine(input, &mut partition);
    let Some(target) = partition.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = partition.iter().map(|c| c[0]).collect();
        let code = serialize(&order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    let cell = partition[target].clone();
    for &v in &cell {
        let mut branch = Partition::with_capacity(partition.len() + 1);
        branch.extend_from_slice(&partition[..target]);
        branch.push(vec![v]);
        branch.push(cell.iter().copied().filter(|&u| u != v).collect());
        branch.extend_from_slice(&partition[target + 1..]);
        search(input, branch, serialize, best);
    }
}
