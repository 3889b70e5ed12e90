//! Difference equations, transformations, and the companion construction.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::parse::{
    indexed_name, parse_assignment, parse_expr, parse_expr_at, split_top_level, Expr, Symbol,
};
use crate::poly::polynomial::vars;
use crate::poly::{RationalFunction, Scalar, Vars};

/// Deepest lag accepted by the parser.
pub const MAX_ORDER: usize = 64;

/// `x[n+1] = F(x[n], ..., x[n-k+1])`.
///
/// The right-hand side lives in the context
/// `x[n], x[n-1], ..., x[n-k+1], p1, p2, ...` (lag `j` is variable `j`,
/// parameters follow the state).
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceEquation {
    order: usize,
    name: String,
    rhs: RationalFunction,
    params: Vec<String>,
}

/// `(x1, ..., xk) -> (R1, ..., Rk)`; parameters follow the state variables
/// in the shared context.
#[derive(Clone, Debug, PartialEq)]
pub struct Transformation {
    dim: usize,
    components: Vec<RationalFunction>,
    params: Vec<String>,
}

/// Either view of a system, as produced by the parser.
#[derive(Clone, Debug, PartialEq)]
pub enum System {
    Equation(DifferenceEquation),
    Map(Transformation),
}

impl System {
    pub fn to_map(&self) -> Transformation {
        match self {
            System::Equation(e) => e.targem(),
            System::Map(m) => m.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            System::Equation(e) => e.order(),
            System::Map(m) => m.dim(),
        }
    }
}

/// Context names for an equation of the given order.
pub fn lag_names(name: &str, order: usize, params: &[String]) -> Vars {
    let mut v: Vec<String> = (0..order).map(|j| indexed_name(name, -(j as i64))).collect();
    v.extend(params.iter().cloned());
    vars(&v)
}

/// `x1, ..., xk` followed by the parameters.
pub fn state_names(dim: usize, params: &[String]) -> Vars {
    let mut v: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    v.extend(params.iter().cloned());
    vars(&v)
}

impl DifferenceEquation {
    /// Wraps a right-hand side already expressed in the lag context.
    pub fn new(order: usize, rhs: RationalFunction, params: Vec<String>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if rhs.nvars() != order + params.len() {
            return Err(Error::ContextMismatch(format!(
                "right-hand side has {} variables, expected {}",
                rhs.nvars(),
                order + params.len()
            )));
        }
        let name = rhs.vars()[0]
            .split('[')
            .next()
            .unwrap_or("x")
            .to_string();
        Ok(DifferenceEquation {
            order,
            name,
            rhs,
            params,
        })
    }

    /// Parses `x[n+1] = rhs` or a bare right-hand side. Plain identifiers
    /// become parameters. `order`, when given, fixes the order instead of
    /// inferring it from the deepest lag.
    pub fn parse(text: &str, order: Option<usize>) -> Result<Self> {
        let (lhs, rhs) = if text.contains('=') {
            let (l, r) = parse_assignment(text)?;
            (Some(l), r)
        } else {
            (None, parse_expr(text)?)
        };
        let mut name: Option<String> = None;
        if let Some(l) = &lhs {
            match l {
                Expr::Sym(Symbol::Indexed { name: n, offset: 1 }, _) => name = Some(n.clone()),
                _ => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "left-hand side must be `x[n+1]`".into(),
                    })
                }
            }
        }
        let mut max_lag = 0usize;
        let mut params = BTreeSet::new();
        for (sym, pos) in rhs.symbols() {
            match sym {
                Symbol::Indexed { name: n, offset } => {
                    match &name {
                        Some(existing) if existing != &n => {
                            return Err(Error::UnknownSymbol(indexed_name(&n, offset)))
                        }
                        None => name = Some(n.clone()),
                        _ => {}
                    }
                    if offset > 0 {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("future term `{}` on the right-hand side", indexed_name(&n, offset)),
                        });
                    }
                    let lag = offset.unsigned_abs() as usize;
                    if lag >= MAX_ORDER {
                        return Err(Error::LagTooDeep(indexed_name(&n, offset)));
                    }
                    if let Some(k) = order {
                        if lag >= k {
                            return Err(Error::LagTooDeep(format!(
                                "{} in an equation of order {k}",
                                indexed_name(&n, offset)
                            )));
                        }
                    }
                    max_lag = max_lag.max(lag);
                }
                Symbol::Plain(p) => {
                    params.insert(p);
                }
            }
        }
        let name = name.unwrap_or_else(|| "x".to_string());
        if params.contains(&name) {
            return Err(Error::UnknownSymbol(format!(
                "{name} (state variables need an index such as {name}[n])"
            )));
        }
        let order = order.unwrap_or(max_lag + 1);
        let params: Vec<String> = params.into_iter().collect();
        let ctx = lag_names(&name, order, &params);
        let resolve = |s: &Symbol| match s {
            Symbol::Indexed { offset, .. } => Some(offset.unsigned_abs() as usize),
            Symbol::Plain(p) => params.iter().position(|q| q == p).map(|i| order + i),
        };
        let rhs = rhs.to_rational(&ctx, &resolve)?;
        Ok(DifferenceEquation {
            order,
            name,
            rhs,
            params,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rhs(&self) -> &RationalFunction {
        &self.rhs
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Replaces parameters by values; unlisted parameters stay symbolic.
    pub fn instantiate(&self, values: &[(&str, Scalar)]) -> Result<DifferenceEquation> {
        let (rhs, params) = instantiate_fns(
            std::slice::from_ref(&self.rhs),
            self.order,
            &self.params,
            values,
            |p| lag_names(&self.name, self.order, p),
        )?;
        Ok(DifferenceEquation {
            order: self.order,
            name: self.name.clone(),
            rhs: rhs.into_iter().next().expect("one component"),
            params,
        })
    }

    /// Companion map: `x_i -> x_{i+1}` for `i < k`, `x_k -> F` with
    /// `x[n-j]` read as `x_{k-j}`.
    pub fn targem(&self) -> Transformation {
        let k = self.order;
        let ctx = state_names(k, &self.params);
        let mut map: Vec<usize> = (0..k).map(|j| k - 1 - j).collect();
        map.extend(k..k + self.params.len());
        let last = self.rhs.remap(&ctx, &map);
        let mut components: Vec<RationalFunction> =
            (1..k).map(|i| RationalFunction::var(&ctx, i)).collect();
        components.push(last);
        Transformation {
            dim: k,
            components,
            params: self.params.clone(),
        }
    }
}

impl fmt::Display for DifferenceEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", indexed_name(&self.name, 1), self.rhs)
    }
}

impl Transformation {
    pub fn new(components: Vec<RationalFunction>, params: Vec<String>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("a map needs at least one component".into()));
        }
        let ctx = components[0].vars().clone();
        if components
            .iter()
            .any(|c| !crate::poly::polynomial::same_vars(c.vars(), &ctx))
        {
            return Err(Error::ContextMismatch("components use different contexts".into()));
        }
        if ctx.len() != dim + params.len() {
            return Err(Error::ContextMismatch(format!(
                "context has {} variables, expected {}",
                ctx.len(),
                dim + params.len()
            )));
        }
        Ok(Transformation {
            dim,
            components,
            params,
        })
    }

    /// Parses a comma-separated component list.
    ///
    /// State variables are `names` when given. Otherwise they are `x1..xk`
    /// if any such symbol occurs, else `x, y, z, w` (first `k`) for `k <= 4`.
    /// Remaining identifiers are parameters.
    pub fn parse(text: &str, names: Option<&[String]>) -> Result<Self> {
        let pieces = split_top_level(text);
        let mut exprs = Vec::with_capacity(pieces.len());
        for (off, piece) in &pieces {
            exprs.push(parse_expr_at(text, *off, piece.len())?);
        }
        let k = exprs.len();
        let mut plain = BTreeSet::new();
        for e in &exprs {
            for (s, _) in e.symbols() {
                match s {
                    Symbol::Plain(p) => {
                        plain.insert(p);
                    }
                    Symbol::Indexed { .. } => return Err(Error::UnknownSymbol(s.display_name())),
                }
            }
        }
        let indexed_style = plain.iter().any(|p| numbered_var(p).is_some());
        let state: Vec<String> = match names {
            Some(n) if n.len() == k => n.to_vec(),
            Some(n) => {
                return Err(Error::InvalidArgument(format!(
                    "{} variable names for {k} components",
                    n.len()
                )))
            }
            None if indexed_style || k > 4 => (1..=k).map(|i| format!("x{i}")).collect(),
            None => ["x", "y", "z", "w"][..k].iter().map(|s| s.to_string()).collect(),
        };
        let mut params = Vec::new();
        for p in &plain {
            if state.contains(p) {
                continue;
            }
            if indexed_style && numbered_var(p).is_some() {
                return Err(Error::UnknownSymbol(format!("{p} in a {k}-dimensional map")));
            }
            params.push(p.clone());
        }
        let mut all = state.clone();
        all.extend(params.iter().cloned());
        let ctx = vars(&all);
        let resolve = |s: &Symbol| match s {
            Symbol::Plain(p) => all.iter().position(|q| q == p),
            _ => None,
        };
        let components = exprs
            .iter()
            .map(|e| e.to_rational(&ctx, &resolve))
            .collect::<Result<Vec<_>>>()?;
        Ok(Transformation {
            dim: k,
            components,
            params,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn vars(&self) -> &Vars {
        self.components[0].vars()
    }

    pub fn instantiate(&self, values: &[(&str, Scalar)]) -> Result<Transformation> {
        let names: Vec<String> = self.vars()[..self.dim].to_vec();
        let (components, params) =
            instantiate_fns(&self.components, self.dim, &self.params, values, |p| {
                let mut all = names.clone();
                all.extend(p.iter().cloned());
                vars(&all)
            })?;
        Ok(Transformation {
            dim: self.dim,
            components,
            params,
        })
    }

    /// The same map over renamed state variables.
    pub fn rename(&self, names: &[String]) -> Transformation {
        let mut all = names.to_vec();
        all.extend(self.params.iter().cloned());
        let ctx = vars(&all);
        let id: Vec<usize> = (0..ctx.len()).collect();
        Transformation {
            dim: self.dim,
            components: self.components.iter().map(|c| c.remap(&ctx, &id)).collect(),
            params: self.params.clone(),
        }
    }

    /// Substitution list for composing with this map's components:
    /// `state` for the state variables, parameters kept as themselves.
    pub fn subs_for(&self, state: &[RationalFunction]) -> Vec<RationalFunction> {
        let ctx = state[0].vars().clone();
        let mut subs = state.to_vec();
        let base = ctx.len() - self.params.len();
        subs.extend((0..self.params.len()).map(|i| RationalFunction::var(&ctx, base + i)));
        subs
    }

    /// `T(g_1, ..., g_k)` for rational functions `g_i` in this map's context.
    pub fn apply_symbolic(&self, state: &[RationalFunction]) -> Result<Vec<RationalFunction>> {
        let subs = self.subs_for(state);
        self.components.iter().map(|c| c.compose(&subs)).collect()
    }

    /// `T^r` as a symbolic map.
    pub fn power(&self, r: usize) -> Result<Transformation> {
        let ctx = self.vars().clone();
        let mut state: Vec<RationalFunction> =
            (0..self.dim).map(|i| RationalFunction::var(&ctx, i)).collect();
        for _ in 0..r {
            state = self.apply_symbolic(&state)?;
        }
        Ok(Transformation {
            dim: self.dim,
            components: state,
            params: self.params.clone(),
        })
    }

    /// Symbolic Jacobian, row `i` holding the partials of component `i`.
    pub fn jacobian(&self) -> Vec<Vec<RationalFunction>> {
        self.components
            .iter()
            .map(|c| (0..self.dim).map(|j| c.differentiate(j)).collect())
            .collect()
    }

    /// Float image of a point; `None` on a vanishing denominator.
    pub fn eval_f64(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.components.iter().map(|c| c.eval(x).ok()).collect()
    }

    /// Same map with its state variables permuted: new variable `i` is old
    /// variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Transformation {
        let ctx = self.vars();
        let mut names: Vec<String> = perm.iter().map(|&i| ctx[i].clone()).collect();
        names.extend(self.params.iter().cloned());
        let nctx = vars(&names);
        let mut map = vec![0; ctx.len()];
        for (new, &old) in perm.iter().enumerate() {
            map[old] = new;
        }
        for i in self.dim..ctx.len() {
            map[i] = i;
        }
        let components = perm
            .iter()
            .map(|&old| self.components[old].remap(&nctx, &map))
            .collect();
        Transformation {
            dim: self.dim,
            components,
            params: self.params.clone(),
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `x12` -> `Some(12)`.
fn numbered_var(s: &str) -> Option<usize> {
    let rest = s.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

fn instantiate_fns(
    fns: &[RationalFunction],
    nstate: usize,
    params: &[String],
    values: &[(&str, Scalar)],
    ctx_for: impl Fn(&[String]) -> Vars,
) -> Result<(Vec<RationalFunction>, Vec<String>)> {
    for (n, _) in values {
        if !params.iter().any(|p| p == n) {
            return Err(Error::UnknownSymbol(n.to_string()));
        }
    }
    let kept: Vec<String> = params
        .iter()
        .filter(|p| !values.iter().any(|(n, _)| n == p))
        .cloned()
        .collect();
    let ctx = ctx_for(&kept);
    let mut subs: Vec<RationalFunction> =
        (0..nstate).map(|i| RationalFunction::var(&ctx, i)).collect();
    for p in params {
        match values.iter().find(|(n, _)| n == p) {
            Some((_, v)) => subs.push(RationalFunction::constant(&ctx, v.clone())),
            None => {
                let idx = nstate + kept.iter().position(|q| q == p).expect("kept");
                subs.push(RationalFunction::var(&ctx, idx));
            }
        }
    }
    let out = fns
        .iter()
        .map(|f| f.compose(&subs))
        .collect::<Result<Vec<_>>>()?;
    Ok((out, kept))
}
