import logging
import sys
import time

from django.core.management.base import BaseCommand

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = """Fractional integrals and box-counting dimension of bivariate functions

Usage: fracdim2d ACTION [SUITE] OPTIONS

ACTION:

  integrate
    writes the grid of a mixed fractional integral of --fn
    e.g. fracdim2d integrate --fn constant:1 --rect 1,2,1,2
         --alpha .5 --beta .5 --grid 33,33 --output out.csv
  dimension
    box-counting dimension of the graph of --fn (or of a csv: file)
    or a fit of the counts read with --counts-from
  variation
    Arzela variation of --fn on --grid, or its trend over --levels
  construct
    samples the limit construction over the generating function --phi
    (or any --fn) on --grid
  verify SUITE
    runs a verification suite: semigroup, special-cases, separable,
    boundedness, bv-preservation, dimension-bounds
    exit code 4 if an assertion fails
  sources
    lists the function catalog

FUNCTIONS (--fn, --g, --phi):

  NAME[:P1,P2,...]  catalog entry with its parameters, e.g. weierstrass:2,2.5,12
  csv:PATH          samples written by this tool (json:PATH as well)
  t:FUNCTION        limit construction over a generating function

OPTIONS:

  --op katugampola|riemann-liouville|hadamard (default katugampola)
  --rect A,B,C,D    rectangle; defaults to the domain of the function
  --alpha, --beta, --p, --q
                    orders and exponents of the integral (p, q default 0)
  --grid M,N        number of samples per axis
  --panels N        quadrature panels per axis (default 128)
  --grading G       panel grading exponent (default: 2 if an order < 1)
  --bound M         known sup |f|, for the boundedness certificate
  --deltas D1,D2..  box sizes (default: from min side / 4 to 8 grid steps)
  --which lower|upper
                    box-count bound used for the fit
  --counts-from F   CSV with delta,count columns
  --oracle          adds the 3D box count to the dimension CSV
  --levels L1,L2..  grid levels (level L = (L+1)^2 samples) for variation
  --pinned          only chains from corner to corner
  --depth N         pieces of the limit construction evaluated exactly
  --shift DX[,DY]   translates the function, e.g. to move [0,1]^2 to [1,2]^2
  --output PATH     primary output file
  --format csv|json format of the samples (default csv)
  --report PATH     JSON report (certificate, fit summary, suite results)
  --threads N       worker threads, 0 = one per cpu (env FRACDIM2D_THREADS)

Errors are written to stderr as JSON {code, message, parameter}.
Exit codes: 0 success, 2 invalid parameter, 3 resolution or size,
4 verification failure.

"""

    def create_parser(self, *args, **kwargs):
        parser = super(Command, self).create_parser(*args, **kwargs)
        from argparse import RawTextHelpFormatter

        # to avoid the above help text to be displayed on a single line
        parser.formatter_class = RawTextHelpFormatter
        return parser

    def add_arguments(self, parser):
        parser.add_argument("action", nargs=1, type=str)
        parser.add_argument("suite", nargs="?", type=str)

        for option, text in (
            ("--op", "operator"),
            ("--fn", "function specification"),
            ("--g", "univariate function specification"),
            ("--phi", "generating function specification"),
            ("--rect", "rectangle a,b,c,d"),
            ("--alpha", "order along x"),
            ("--beta", "order along y"),
            ("--p", "exponent along x"),
            ("--q", "exponent along y"),
            ("--grid", "samples per axis m,n"),
            ("--panels", "quadrature panels per axis"),
            ("--grading", "panel grading exponent"),
            ("--bound", "known sup |f|"),
            ("--deltas", "comma separated box sizes"),
            ("--which", "lower or upper"),
            ("--counts-from", "CSV of delta,count"),
            ("--levels", "comma separated grid levels"),
            ("--depth", "pieces of the construction"),
            ("--shift", "translation dx[,dy]"),
            ("--output", "output file"),
            ("--format", "csv or json"),
            ("--report", "JSON report file"),
            ("--threads", "worker threads"),
        ):
            parser.add_argument(option, action="store", help=text)

        parser.add_argument("--oracle", action="store_true", help="3D box count")
        parser.add_argument("--pinned", action="store_true", help="corner chains")

    def handle(self, *args, **options):
        from fracdim2d.exceptions import Fracdim2dError

        show_help = True

        self.options = options
        action = options["action"][0]

        action_method = getattr(self, "action_" + action.replace("-", "_"), None)
        if action_method:
            show_help = False
            started = time.perf_counter()
            logger.info("fracdim2d %s started", action)
            try:
                summary = action_method()
            except Fracdim2dError as e:
                logger.info("fracdim2d %s failed: %s", action, e.message)
                self.stderr.write(e.as_json())
                sys.exit(e.exit_code)
            logger.info(
                "fracdim2d %s done in %.3fs", action, time.perf_counter() - started
            )

        if show_help:
            self.stdout.write(self.help)
        else:
            self.stdout.write(summary)

    # actions

    def action_integrate(self):
        from fracdim2d import fracint

        op = self._get("op") or "katugampola"
        source = self._get_source("fn", required=True)
        ord = self._get_order(hadamard=op == "hadamard")
        spec = self._get_grid(source, "33,33")
        quad = self._get_quadrature()

        samples = fracint.integral_grid(op, source, spec, ord, quad, self._threads())
        self._write_samples(samples, required=True)

        ret = "{} of {} on {}x{}: value at ({:g}, {:g}) = {:.17g}".format(
            op, source, spec.m, spec.n, spec.rect.b, spec.rect.d, samples.values[-1]
        )
        bound = self._get_float("bound")
        if bound is None:
            bound = source.bound(spec.rect)
        if op == "katugampola" and bound is not None:
            cert = fracint.certificate_for(
                samples, source, ord, quad, bound, self._threads()
            )
            self._write_report(cert.as_dict())
            ret += "; bound {:.6g} {} (sup {:.6g})".format(
                cert.bound, "holds" if cert.holds else "FAILS", cert.sup_abs_observed
            )
        return ret

    def action_dimension(self):
        from fracdim2d import boxdim
        from fracdim2d.exceptions import ParameterError

        which = self._get("which") or "lower"
        counts_from = self._get("counts_from")
        if counts_from:
            try:
                with open(counts_from, newline="") as fh:
                    points = boxdim.read_counts_csv(fh, which)
            except OSError as e:
                raise ParameterError(
                    "cannot read {}: {}".format(counts_from, e), "counts-from"
                )
            fit = boxdim.dimension_fit_counts(points, which)
        else:
            samples = self._get_samples("257,257")
            fit = boxdim.dimension_fit(samples, self._get_floats("deltas"), which)
            oracle = None
            if self.options["oracle"]:
                oracle = {
                    c.delta: boxdim.boxcount_bruteforce_3d(samples, c.delta)
                    for c in fit.counts
                }
            output = self._get("output")
            if output:
                with open(output, "w", newline="") as fh:
                    boxdim.write_counts_csv(fh, fit, oracle)

        self._write_report(fit.as_dict())
        return "dimension ({}): slope {:.6f}, r2 {:.6f}, {} deltas, {} dropped".format(
            which, fit.slope, fit.r_squared, len(fit.points), len(fit.dropped)
        )

    def action_variation(self):
        from fracdim2d import variation

        levels = self._get_floats("levels")
        if levels:
            source = self._get_source("fn", required=True)
            rect = self._get_rect(source)
            trend = variation.variation_trend(
                source,
                rect,
                [int(level) for level in levels],
                pinned=self.options["pinned"],
                threads=self._threads(),
            )
            data = [{"level": level, "value": value} for level, value in trend]
            self._write_json(data)
            return "variation trend of {}: {}".format(
                source, ", ".join("{}: {:.6g}".format(l, v) for l, v in trend)
            )

        samples = self._get_samples("33,33")
        result = variation.arzela_variation(samples, pinned=self.options["pinned"])
        self._write_json(result.as_dict())
        return "variation {:.17g} along {} points".format(
            result.value, len(result.path)
        )

    def action_construct(self):
        from fracdim2d.constructions import TConstruction, parse_function_spec
        from fracdim2d.core import Domain, sample

        phi = self._get("phi")
        if phi:
            phi = parse_function_spec(phi)
            if self._get("rect"):
                rect = self._get_rect(None)
            else:
                d = phi.domain
                rect = Domain(d.a, d.a + 2 * (d.b - d.a), d.c, d.d)
            depth = self._get_float("depth")
            source = TConstruction(rect, phi, depth)
            source = self._shifted(source)
        else:
            source = self._get_source("fn", required=True)

        spec = self._get_grid(source, "257,257")
        samples = sample(source, spec, self._threads())
        self._write_samples(samples, required=True)
        return "sampled {} on {}x{}".format(source, spec.m, spec.n)

    def action_verify(self):
        from fracdim2d import verify
        from fracdim2d.exceptions import ParameterError, VerificationError

        suite = self.options["suite"]
        if not suite:
            raise ParameterError(
                "verify needs a suite ({})".format(", ".join(verify.SUITES)), "suite"
            )
        if suite not in verify.SUITES:
            raise ParameterError(
                "unknown suite '{}' ({})".format(suite, ", ".join(verify.SUITES)),
                "suite",
            )

        kwargs = {"threads": self._threads()}
        if self._get("panels"):
            kwargs["quad"] = self._get_quadrature()
        if suite == "separable":
            source = self._get_source("g", required=True)
        else:
            source = self._get_source("fn", required=True)
        if self._get("rect"):
            kwargs["rect"] = self._get_rect(source)
        if suite == "boundedness":
            kwargs["M"] = self._get_float("bound")

        report = verify.run_suite(suite, source, **kwargs)
        self._write_report(report.as_dict())
        ret = "verify {} {}: {} ({} assertions)".format(
            suite,
            source,
            "passed" if report.passed else "FAILED",
            len(report.assertions),
        )
        if not report.passed:
            self.stdout.write(ret)
            failed = [a["name"] for a in report.assertions if not a["passed"]]
            raise VerificationError(
                "{} failed: {}".format(suite, ", ".join(failed)), "suite"
            )
        return ret

    def action_sources(self):
        from fracdim2d.constructions import catalog_entries

        template = "{:20.20} {:5.5} {:5.5} {:6.6} {:20.20} {}"
        lines = [template.format("name", "cont", "bv", "holder", "params", "label")]
        for entry in catalog_entries():
            lines.append(
                template.format(
                    entry["name"],
                    "yes" if entry["continuous"] else "no",
                    "yes" if entry["bounded_variation"] else "no",
                    "" if entry["holder"] is None else "{:g}".format(entry["holder"]),
                    ",".join(
                        "{}={:g}".format(p["name"], p["default"]) for p in entry["params"]
                    ),
                    entry["label"],
                )
            )
        return "\n".join(lines)

    # options

    def _get(self, name):
        ret = self.options.get(name)
        if ret is not None:
            ret = str(ret).strip()
        return ret or None

    def _get_float(self, name, required=False):
        from fracdim2d.exceptions import ParameterError

        value = self._get(name)
        if value is None:
            if required:
                raise ParameterError("--{} is required".format(name), name)
            return None
        try:
            return float(value)
        except ValueError:
            raise ParameterError(
                "--{} must be a number (got {})".format(name, value), name
            )

    def _get_floats(self, name):
        from fracdim2d.exceptions import ParameterError

        value = self._get(name)
        if value is None:
            return None
        try:
            return [float(v) for v in value.split(",") if v.strip()]
        except ValueError:
            raise ParameterError(
                "--{} must be comma separated numbers (got {})".format(name, value),
                name,
            )

    def _threads(self):
        threads = self._get_float("threads")
        return None if threads is None else int(threads)

    def _get_order(self, hadamard=False):
        from fracdim2d.core import FracOrder

        alpha = self._get_float("alpha", required=True)
        beta = self._get_float("beta", required=True)
        if hadamard:
            return FracOrder(alpha, beta)
        return FracOrder(
            alpha, beta, self._get_float("p") or 0.0, self._get_float("q") or 0.0
        )

    def _get_quadrature(self):
        from fracdim2d.fracint import QuadratureSpec

        panels = self._get_float("panels")
        return QuadratureSpec(
            None if panels is None else panels, self._get_float("grading")
        )

    def _shifted(self, source):
        from fracdim2d.sources.base import ShiftedSource

        shift = self._get_floats("shift")
        if not shift:
            return source
        return ShiftedSource(source, *shift[:2])

    def _get_source(self, name, required=False):
        from fracdim2d.constructions import parse_function_spec
        from fracdim2d.exceptions import ParameterError

        value = self._get(name)
        if value is None:
            if required:
                raise ParameterError("--{} is required".format(name), name)
            return None
        return self._shifted(parse_function_spec(value))

    def _get_rect(self, source):
        from fracdim2d.core import Domain
        from fracdim2d.exceptions import ParameterError

        value = self._get("rect")
        if value:
            return Domain.from_string(value)
        domain = source.domain if source is not None else None
        if domain is None or any(
            abs(v) == float("inf") for v in (domain.a, domain.b, domain.c, domain.d)
        ):
            raise ParameterError(
                "--rect is required for {}".format(source), "rect"
            )
        return domain

    def _get_grid(self, source, default):
        from fracdim2d.core import GridSpec
        from fracdim2d.exceptions import ParameterError

        value = self._get("grid") or default
        try:
            m, n = [int(v) for v in value.split(",")]
        except ValueError:
            raise ParameterError("--grid must be m,n (got {})".format(value), "grid")
        return GridSpec(self._get_rect(source), m, n)

    def _get_samples(self, default):
        '''Samples of --fn: read as is from a file or sampled on --grid'''
        from fracdim2d.core import sample
        from fracdim2d.exceptions import ParameterError
        from fracdim2d.sources.sampled import SampledSource

        source = self._get_source("fn", required=True)
        if isinstance(source, SampledSource) and not self._get("grid"):
            return source.samples
        if not source.continuous:
            raise ParameterError(
                "{} is not continuous, its samples are meaningless".format(source),
                "fn",
            )
        return sample(source, self._get_grid(source, default), self._threads())

    # outputs

    def _write_samples(self, samples, required=False):
        from fracdim2d.exceptions import ParameterError

        output = self._get("output")
        if not output:
            if required:
                raise ParameterError("--output is required", "output")
            return
        fmt = self._get("format") or "csv"
        if fmt not in ("csv", "json"):
            raise ParameterError("--format must be csv or json", "format")
        samples.save(output, fmt)

    def _write_json(self, data):
        import json

        output = self._get("output")
        if output:
            with open(output, "w") as fh:
                json.dump(data, fh, sort_keys=True)
                fh.write("\n")

    def _write_report(self, data):
        import json

        report = self._get("report")
        if report:
            with open(report, "w") as fh:
                json.dump(data, fh, sort_keys=True, indent=2)
                fh.write("\n")
