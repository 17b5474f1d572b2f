use supertime::superspace::{interval, osp_generators, DiffOperator};

use crate::{Entry, Status};

pub(super) fn run() -> Vec<Entry> {
    let xs = osp_generators();
    let f = interval();
    let mut out = Vec::new();
    for (k, x) in xs.iter().enumerate() {
        let img = x.apply(&f);
        out.push(
            Entry::new(
                format!("osp.annihilate.X{}", k + 1),
                format!("X{} annihilates t^2 - 2*thetabar*theta", k + 1),
                Status::of(img.is_zero()),
            )
            .expected(0)
            .actual(&img)
            .notes(format!("X{} = {x}", k + 1)),
        );
    }
    for i in 0..xs.len() {
        for j in i..xs.len() {
            out.extend(bracket(&xs, i, j));
        }
    }
    out
}

fn bracket(xs: &[DiffOperator; 5], i: usize, j: usize) -> Vec<Entry> {
    let tag = format!("X{}_X{}", i + 1, j + 1);
    let relation = format!("graded bracket [X{}, X{}] lies in the span of X1..X5", i + 1, j + 1);
    let br = match xs[i].graded_bracket(&xs[j]) {
        Ok(b) => b,
        Err(e) => return vec![Entry::errored(format!("osp.closure.{tag}"), relation, e)],
    };
    let Some(cs) = br.expand_in(xs) else {
        return vec![Entry::new(format!("osp.closure.{tag}"), relation, Status::Fail).actual(&br)];
    };
    let recombined = cs
        .iter()
        .zip(xs)
        .fold(DiffOperator::default(), |acc, (c, x)| {
            acc.add(&x.scale(c))
        });
    let combo: Vec<String> = cs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let c = c.to_string();
            if c.contains(' ') {
                format!("({c})*X{}", k + 1)
            } else {
                format!("{c}*X{}", k + 1)
            }
        })
        .collect();
    let combo = if combo.is_empty() { "0".to_string() } else { combo.join(" + ") };
    vec![
        Entry::new(format!("osp.closure.{tag}"), relation, Status::of(recombined == br)).actual(&br),
        Entry::new(
            format!("osp.structure.{tag}"),
            format!("structure constants of [X{}, X{}]", i + 1, j + 1),
            Status::ReportOnly,
        )
        .actual(combo),
    ]
}
