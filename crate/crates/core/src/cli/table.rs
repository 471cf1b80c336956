//! `table <op>`: print CSV value tables for single operations.

use crate::arith;
use crate::besselkern::{kernel, KernelOrder};
use crate::complexfn;
use crate::error::{Error, Result};
use crate::mellin::mellin_kernel;
use crate::reciprocity;
use num_complex::Complex64;
use std::collections::HashMap;
use std::path::Path;

fn parse_args(args: &[String]) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for a in args {
        let (k, v) = a
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("argument `{a}` is not key=value")))?;
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

struct Args(HashMap<String, String>);

impl Args {
    fn f64(&self, key: &str) -> Result<f64> {
        self.0
            .get(key)
            .ok_or_else(|| Error::Config(format!("missing argument `{key}`")))?
            .parse()
            .map_err(|_| Error::Config(format!("argument `{key}` must be a number")))
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.0.get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Config(format!("argument `{key}` must be a number"))),
            None => Ok(default),
        }
    }

    fn str_or(&self, key: &str, default: &str) -> String {
        self.0.get(key).cloned().unwrap_or_else(|| default.into())
    }
}

fn kernel_order(args: &Args) -> Result<KernelOrder> {
    Ok(match args.str_or("kind", "minus").as_str() {
        "plus" => KernelOrder::Plus {
            r: args.f64_or("r", 0.0)?,
        },
        "minus" => KernelOrder::Minus {
            r: args.f64_or("r", 0.0)?,
        },
        "hol" => KernelOrder::Hol {
            k: args.f64_or("k", 2.0)? as u32,
        },
        other => return Err(Error::Config(format!("unknown kernel kind `{other}`"))),
    })
}

const OPS: &[&str] = &[
    "log-gamma",
    "zeta",
    "hurwitz-zeta",
    "gamma-r",
    "kloosterman",
    "ramanujan",
    "divisor-eigenvalue",
    "kernel",
    "mellin-kernel",
    "big-h",
    "stirling",
];

pub fn run(op: &str, raw_args: &[String], out: Option<&Path>) -> Result<()> {
    let args = Args(parse_args(raw_args)?);
    let mut lines: Vec<String> = Vec::new();
    match op {
        "help" => {
            lines.push(format!("available ops: {}", OPS.join(", ")));
        }
        "log-gamma" => {
            let z = Complex64::new(args.f64("re")?, args.f64_or("im", 0.0)?);
            let v = complexfn::log_gamma(z)?;
            lines.push("re,im,value_re,value_im".into());
            lines.push(format!("{},{},{:.16e},{:.16e}", z.re, z.im, v.re, v.im));
        }
        "zeta" => {
            let s = Complex64::new(args.f64("re")?, args.f64_or("im", 0.0)?);
            let v = complexfn::zeta(s)?;
            lines.push("re,im,value_re,value_im".into());
            lines.push(format!("{},{},{:.16e},{:.16e}", s.re, s.im, v.re, v.im));
        }
        "hurwitz-zeta" => {
            let s = Complex64::new(args.f64("re")?, args.f64_or("im", 0.0)?);
            let a = args.f64("a")?;
            let v = complexfn::hurwitz_zeta(s, a)?;
            lines.push("re,im,a,value_re,value_im".into());
            lines.push(format!(
                "{},{},{},{:.16e},{:.16e}",
                s.re, s.im, a, v.re, v.im
            ));
        }
        "gamma-r" => {
            let s = Complex64::new(args.f64("re")?, args.f64_or("im", 0.0)?);
            let v = complexfn::gamma_r(s)?;
            lines.push("re,im,value_re,value_im".into());
            lines.push(format!("{},{},{:.16e},{:.16e}", s.re, s.im, v.re, v.im));
        }
        "kloosterman" => {
            let m = args.f64("m")? as i64;
            let n = args.f64("n")? as i64;
            let c_max = args.f64("c-max")? as u64;
            lines.push("c,value".into());
            for c in 1..=c_max {
                lines.push(format!("{c},{:.16e}", arith::kloosterman(m, n, c)));
            }
        }
        "ramanujan" => {
            let n = args.f64("n")? as i64;
            let c_max = args.f64("c-max")? as u64;
            lines.push("c,value".into());
            for c in 1..=c_max {
                lines.push(format!("{c},{}", arith::ramanujan_sum(c, n)));
            }
        }
        "divisor-eigenvalue" => {
            let n = args.f64("n")? as u64;
            let t = args.f64_or("t", 0.0)?;
            lines.push("n,t,value".into());
            lines.push(format!("{n},{t},{:.16e}", arith::divisor_eigenvalue(n, t)));
        }
        "kernel" => {
            let order = kernel_order(&args)?;
            let x_min = args.f64_or("x-min", 0.1)?;
            let x_max = args.f64_or("x-max", 10.0)?;
            let steps = args.f64_or("steps", 20.0)? as usize;
            lines.push("x,value".into());
            for i in 0..=steps {
                let x = x_min * (x_max / x_min).powf(i as f64 / steps as f64);
                lines.push(format!("{:.16e},{:.16e}", x, kernel(order, x)?));
            }
        }
        "mellin-kernel" => {
            let order = kernel_order(&args)?;
            let sigma = args.f64_or("sigma", 0.5)?;
            let tau = args.f64_or("tau", 0.0)?;
            let v = mellin_kernel(order, Complex64::new(sigma, tau))?;
            lines.push("sigma,tau,value_re,value_im,error_estimate".into());
            lines.push(format!(
                "{sigma},{tau},{:.16e},{:.16e},{:.3e}",
                v.value.re, v.value.im, v.error_estimate
            ));
        }
        "big-h" => {
            let t_g = args.f64("tg")?;
            let t_min = args.f64_or("t-min", 0.0)?;
            let t_max = args.f64_or("t-max", 3.0 * t_g)?;
            let steps = args.f64_or("steps", 50.0)? as usize;
            lines.push("t,value,main_term,omega".into());
            for i in 0..=steps {
                let t = t_min + (t_max - t_min) * i as f64 / steps as f64;
                lines.push(format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e}",
                    t,
                    reciprocity::big_h(t, t_g),
                    reciprocity::big_h_main(t, t_g),
                    reciprocity::omega(t, t_g)
                ));
            }
        }
        "stirling" => {
            let t_g = args.f64("tg")?;
            let s = Complex64::new(args.f64_or("re", 0.5)?, args.f64_or("im", 0.0)?);
            let rep = reciprocity::stirling_expansion_check(s, t_g)?;
            lines.push("deviation,leading_scale,ratio".into());
            lines.push(format!(
                "{:.16e},{:.16e},{:.16e}",
                rep.deviation, rep.leading_scale, rep.ratio
            ));
        }
        other => {
            return Err(Error::Config(format!(
                "unknown table op `{other}`; available: {}",
                OPS.join(", ")
            )))
        }
    }
    let text = lines.join("\n") + "\n";
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_op_is_config_error() {
        assert!(matches!(
            run("frobnicate", &[], None),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn missing_arg_is_config_error() {
        let err = run("big-h", &[], None).unwrap_err();
        assert!(err.to_string().contains("tg"), "{err}");
    }

    #[test]
    fn kernel_table_writes_file() {
        let dir = std::env::temp_dir().join("specrec_table_test.csv");
        run(
            "kernel",
            &[
                "kind=minus".into(),
                "r=0".into(),
                "x-min=0.5".into(),
                "x-max=1".into(),
                "steps=2".into(),
            ],
            Some(&dir),
        )
        .unwrap();
        let text = std::fs::read_to_string(&dir).unwrap();
        assert!(text.lines().count() == 4);
        let _ = std::fs::remove_file(dir);
    }
}
