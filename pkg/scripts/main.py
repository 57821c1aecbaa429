"""
Point d'entrée en ligne de commande de potentiel_p.

Chaque sous-commande charge un graphe (cache JSON ou espace modèle de la
configuration), exécute une opération, écrit un rapport JSON (et un CSV
pour les balayages) et retourne un code de sortie:
0 succès, 1 assertion non satisfaite ou non-convergence, 2 erreur d'entrée.
"""

import argparse
import os
import sys
import time
from typing import Any, Callable, Dict, List, Optional

import numpy as np

# Ajout du répertoire parent au chemin de recherche Python
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cable import build_cable_system, cable_energy, check_rsvr_seam, interpolate
from src.capacity import (
    AnnulusCapacities,
    CondenserSpec,
    build_cutoff,
    capacity,
    capacity_scaling_sweep,
    check_cutoff_sobolev,
    check_equilibrium_identities,
    verify_wolff_bounds,
)
from src.experiments.checks import get_check, harmonic_probes, run_principles
from src.experiments.pipeline import RunReport, VerificationPipeline
from src.harnack import BoundarySampler, estimate_harnack, estimate_poincare
from src.modulus import ModulusOptions, check_mod_cap_comparability, p_modulus
from src.netgraph import (
    NetGraph,
    ball,
    boundary_ring,
    check_llc,
    estimate_volume_growth,
    load_graph,
    model_graph,
    outside_ball,
    save_graph,
)
from src.penergy import DirichletProblem, SolverOptions, check_maximum_principle, energy, solve_dirichlet
from src.scaling import PowerScaling
from src.utils.config_loader import canonical_config_hash, get_path, get_workers, load_config, validate_config
from src.utils.exceptions import ConfigError, ConvergenceError, PotentielError
from src.utils.logger_config import setup_logger
from src.utils.reporting import write_csv, write_json

# Configuration du logger
logger = setup_logger('main', 'main.log')

EXIT_OK, EXIT_ASSERTION, EXIT_INPUT = 0, 1, 2


def print_header():
    """
    Affiche un en-tête visuel au début du programme.
    """
    print("\n" + "=" * 70)
    print("🧮 POTENTIEL_P - THÉORIE DU POTENTIEL DISCRÈTE 🧮".center(70))
    print("=" * 70 + "\n")


def print_section(title, emoji="📊"):
    """
    Affiche un titre de section formaté.
    """
    print(f"\n{emoji} {title} {emoji}")
    print("-" * 50)


class Context:
    """Configuration, graphe et options partagés par une sous-commande."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = self._load_config(args.config)
        self.opts = SolverOptions.from_config(self.config.get('solver'))
        self._graph: Optional[NetGraph] = None

    @staticmethod
    def _load_config(path: Optional[str]) -> Dict[str, Any]:
        if path is None:
            return load_config()
        if not os.path.exists(path):
            raise ConfigError(f"Fichier de configuration introuvable: {path}")
        return validate_config(load_config(path))

    def setting(self, section: str, key: str, default: Any, value: Any = None) -> Any:
        """Valeur de la ligne de commande, sinon de la configuration, sinon par défaut."""
        if value is not None:
            return value
        return (self.config.get(section) or {}).get(key, default)

    @property
    def p(self) -> float:
        p = self.args.p if self.args.p is not None else float(self.config.get('p', 2.0))
        if not p > 1.0:
            raise ConfigError(f"p doit être > 1 (reçu {p})")
        return p

    @property
    def graph(self) -> NetGraph:
        if self._graph is None:
            if self.args.graph:
                self._graph = load_graph(self.args.graph)
            else:
                space = self.config.get('space') or {}
                net = self.config.get('net') or {}
                self._graph = model_graph(space.get('kind', 'carpet'), int(space.get('level', 3)),
                                          net.get('epsilon'), float(space.get('scale', 1.0)),
                                          net.get('seed'), p=self.p)
            logger.info(f"Graphe chargé: {self._graph.n} sommets, {self._graph.m} arêtes")
        return self._graph

    @property
    def center(self) -> int:
        point = [self.args.center_x, self.args.center_y][:self.graph.coords.shape[1]]
        return self.graph.nearest_vertex(point)

    def psi_hat(self, radii: Optional[List[float]]) -> PowerScaling:
        """Psi du graphe, ou estimée par balayage de capacités si des rayons sont donnés."""
        radii = radii or (self.config.get('scaling') or {}).get('radii')
        if not radii:
            return self.graph.psi
        sweep = capacity_scaling_sweep(self.graph, self.center, radii, p=self.p, opts=self.opts,
                                       workers=get_workers())
        return sweep.psi_hat(self.graph)


def _out_path(args: argparse.Namespace, command: str) -> str:
    return args.out or os.path.join(get_path('output_dir'), f"{command}.json")


def _finish(ctx: Context, command: str, payload: Any, checks: Dict[str, bool], start: float,
            table: Optional[List[dict]] = None) -> int:
    """Écrit le rapport, la table éventuelle et le rapport d'exécution."""
    path = _out_path(ctx.args, command)
    outputs = [write_json(payload, path)]
    if table is not None:
        outputs.append(write_csv(table, os.path.splitext(path)[0] + '.csv'))
    run = RunReport(command, canonical_config_hash(ctx.config), time.time() - start, outputs,
                    {k: bool(v) for k, v in checks.items()})
    run.status = 'passed' if all(run.checks.values()) else 'failed'
    write_json(run, os.path.splitext(path)[0] + '.run.json')
    for name, ok in run.checks.items():
        print(f"  {'✅' if ok else '❌'} {name}")
    print(f"📁 Rapport: {path}")
    return EXIT_OK if run.status == 'passed' else EXIT_ASSERTION


def cmd_build_graph(ctx: Context, start: float) -> int:
    args = ctx.args
    if not args.out:
        raise ConfigError("--out est obligatoire pour build-graph")
    graph = model_graph(args.kind, args.level, args.epsilon, args.scale, args.seed, p=ctx.p)
    save_graph(graph, args.out)
    print(f"✨ Graphe écrit: {graph.n} sommets, {graph.m} arêtes -> {args.out}")
    return EXIT_OK


def cmd_solve(ctx: Context, start: float) -> int:
    graph, args, p = ctx.graph, ctx.args, ctx.p
    U = ball(graph, ctx.center, args.r)
    g = np.zeros(graph.n)
    if args.boundary == 'field':
        _, g = BoundarySampler(graph, boundary_ring(graph, U), kinds=('field',)).sample(
            np.random.default_rng(args.seed))
    sol = solve_dirichlet(DirichletProblem(graph, U, g, p, args.lam, args.f), ctx.opts)
    checks = {'kkt_residual': sol.kkt_residual <= ctx.opts.accept_tol}
    if args.f == 0.0 and args.lam == 0.0:
        checks['maximum_principle'] = check_maximum_principle(graph, sol.u, U)
    payload = {'center': ctx.center, 'r': args.r, 'p': p, 'lam': args.lam, 'f': args.f,
               'max_u': float(sol.u[U].max()), 'min_u': float(sol.u[U].min()), 'solution': sol}
    return _finish(ctx, 'solve', payload, checks, start)


def cmd_capacity(ctx: Context, start: float) -> int:
    graph, args, p = ctx.graph, ctx.args, ctx.p
    x = ctx.center
    A = ctx.setting('capacity', 'A', 2.0, args.A)
    spec = CondenserSpec(ball(graph, x, args.r), outside_ball(graph, x, A * args.r))
    result = capacity(graph, spec, p, ctx.opts)
    payload = {'center': x, 'r': args.r, 'A': A, 'p': p, 'value': result.value,
               'kkt_residual': result.kkt_residual, 'iterations': result.iterations}
    checks = {'positive': result.value > 0}
    if args.equilibrium:
        report = check_equilibrium_identities(graph, result, spec, p, seed=args.seed, opts=ctx.opts)
        payload['equilibrium'] = report
        checks.update({'pairing': report.pairing_ok, 'support': report.support_ok})
    return _finish(ctx, 'capacity', payload, checks, start)


def cmd_modulus(ctx: Context, start: float) -> int:
    graph, args, p = ctx.graph, ctx.args, ctx.p
    x = ctx.center
    spec = CondenserSpec(ball(graph, x, args.r), outside_ball(graph, x, args.A * args.r))
    mod_opts = ModulusOptions.from_config(ctx.config.get('modulus'))
    result = p_modulus(graph, spec, p, mod_opts)
    payload = {'center': x, 'r': args.r, 'A': args.A, 'p': p, 'modulus': result}
    checks = {'positive': result.value > 0}
    if args.compare:
        report = check_mod_cap_comparability(graph, spec, p, opts=ctx.opts, mod_opts=mod_opts)
        payload['comparability'] = report
        checks['comparable'] = report.within
    return _finish(ctx, 'modulus', payload, checks, start)


def cmd_wolff(ctx: Context, start: float) -> int:
    graph, args, p = ctx.graph, ctx.args, ctx.p
    x = ctx.center
    U = ball(graph, x, args.domain_r) if args.domain_r else np.arange(graph.n)
    caps = AnnulusCapacities(graph, p, ctx.opts)
    report = verify_wolff_bounds(graph, U, x, args.r, args.f, p, ctx.opts, caps)
    checks = {'non_degenerate': not report.degenerate,
              'finite': bool(np.isfinite(report.lower_ratio) and np.isfinite(report.upper_ratio))}
    return _finish(ctx, 'wolff', report, checks, start)


def cmd_cutoff(ctx: Context, start: float) -> int:
    graph, args, p = ctx.graph, ctx.args, ctx.p
    x = ctx.center
    psi_hat = ctx.psi_hat(args.sweep_radii)
    cutoff = build_cutoff(graph, x, args.r, psi_hat, p, R_out=args.r_out, opts=ctx.opts)
    probes = harmonic_probes(graph, x, cutoff.R_out, ctx.setting('capacity', 'probes', 16, args.probes),
                             p, args.seed, ctx.opts)
    probes += [np.ones(graph.n), cutoff.phi]
    fit = check_cutoff_sobolev(graph, cutoff, probes, float(psi_hat(args.r)), p)
    payload = {'cutoff': cutoff, 'fit': fit, 'psi_hat': psi_hat}
    return _finish(ctx, 'cutoff', payload, {'finite': bool(np.isfinite(fit.c1 + fit.c2))}, start)


def cmd_harnack(ctx: Context, start: float) -> int:
    args = ctx.args
    report = estimate_harnack(ctx.graph, ctx.center, args.r, ctx.setting('harnack', 'A_H', 4.0, args.A),
                              ctx.setting('harnack', 'trials', 100, args.trials), args.seed,
                              p=ctx.p, opts=ctx.opts, workers=get_workers())
    table = [t.__dict__.copy() for t in report.trials]
    checks = {'finite': bool(np.isfinite(report.C_H_hat)),
              'inf_positive': all(t.inf > 0 for t in report.trials)}
    return _finish(ctx, 'harnack', report, checks, start, table)


def cmd_poincare(ctx: Context, start: float) -> int:
    args = ctx.args
    report = estimate_poincare(ctx.graph, ctx.center, args.r, args.A, ctx.psi_hat(args.sweep_radii), ctx.p,
                               opts=ctx.opts, seed=args.seed)
    return _finish(ctx, 'poincare', report, {'finite': bool(np.isfinite(report.C_hat))}, start)


def cmd_scaling_sweep(ctx: Context, start: float) -> int:
    args = ctx.args
    sweep = capacity_scaling_sweep(ctx.graph, ctx.center, args.radii, A=args.A, p=ctx.p, opts=ctx.opts,
                                   workers=get_workers())
    payload = {'center': sweep.center, 'A': sweep.A, 'p': sweep.p, 'slope': sweep.slope,
               'beta_hat': sweep.beta_hat, 'r_squared': sweep.fit.r_squared, 'skipped': sweep.skipped,
               'psi_hat': sweep.psi_hat(ctx.graph)}
    return _finish(ctx, 'scaling-sweep', payload, {'finite': bool(np.isfinite(sweep.beta_hat))}, start,
                   sweep.table())


def cmd_llc(ctx: Context, start: float) -> int:
    result = check_llc(ctx.graph, ctx.center, ctx.args.r, ctx.args.A)
    return _finish(ctx, 'llc', result, {'llc': result.holds}, start)


def cmd_cable(ctx: Context, start: float) -> int:
    graph, args, p = ctx.graph, ctx.args, ctx.p
    cs = build_cable_system(graph, p)
    u = np.random.default_rng(args.seed).normal(size=graph.n)
    discrete = energy(graph, u, p)
    rel = abs(cable_energy(cs, interpolate(cs, u)) - discrete) / max(discrete, 1e-300)
    eps = graph.epsilon
    tau = ctx.setting('cable', 'tau', 0.0, args.tau)
    seam = check_rsvr_seam(cs, tau, [eps * t for t in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)])
    payload = {'cables': cs, 'energy_rel_err': rel, 'seam': seam}
    return _finish(ctx, 'cable', payload, {'energy_identity': rel <= 1e-12, 'seam_finite': bool(np.isfinite(seam.C))},
                   start)


def cmd_volume(ctx: Context, start: float) -> int:
    report = estimate_volume_growth(ctx.graph, ctx.center, ctx.args.radii)
    table = [{'r': r, 'mass': m} for r, m in zip(report.radii, report.masses)]
    return _finish(ctx, 'volume', report, {'finite': bool(np.isfinite(report.d_h_hat))}, start, table)


def cmd_principles(ctx: Context, start: float) -> int:
    args = ctx.args
    params = get_check('principles').params(ctx.config, args.quick)
    if args.count is not None:
        params.update({'comparison': args.count, 'maximum': args.count,
                       'pasting': args.count, 'modification': args.count})
    params['seed'] = args.seed
    outcome = run_principles(ctx.graph, params, ctx.opts)
    return _finish(ctx, 'principles', outcome, outcome.criteria, start)


def cmd_verify_all(ctx: Context, start: float) -> int:
    pipeline = VerificationPipeline(ctx.config, ctx.args.quick, ctx.args.only)
    ok = pipeline.run()
    for report in pipeline.reports:
        print(f"  {'✅' if report.status == 'passed' else '❌'} {report.command} ({report.wall_time:.1f} s)")
    return EXIT_OK if ok else EXIT_ASSERTION


def _radii(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"liste de rayons invalide: {text}") from e


def build_parser() -> argparse.ArgumentParser:
    """Construit l'analyseur de la ligne de commande."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help="Fichier de configuration YAML")
    common.add_argument('--graph', help="Graphe en cache (JSON écrit par build-graph)")
    common.add_argument('--center-x', type=float, default=0.5)
    common.add_argument('--center-y', type=float, default=1.0 / 6.0)
    common.add_argument('--p', type=float, default=None)
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--out', help="Chemin du rapport JSON")

    parser = argparse.ArgumentParser(description="Théorie du potentiel non linéaire discrète")
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, handler: Callable[[Context, float], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add('build-graph', cmd_build_graph, "Construit et sauvegarde un graphe d'approximation")
    p.add_argument('--kind', choices=['interval', 'lattice2d', 'carpet', 'gasket'], default='carpet')
    p.add_argument('--level', type=int, default=3)
    p.add_argument('--epsilon', type=float, default=None)
    p.add_argument('--scale', type=float, default=1.0)

    p = add('solve', cmd_solve, "Problème de Dirichlet / Poisson sur une boule")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--lam', type=float, default=0.0)
    p.add_argument('--f', type=float, default=0.0)
    p.add_argument('--boundary', choices=['zero', 'field'], default='field')

    p = add('capacity', cmd_capacity, "Capacité cap(B(x, r), X \\ B(x, A r))")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--A', type=float, default=None)
    p.add_argument('--equilibrium', action='store_true')

    p = add('modulus', cmd_modulus, "p-module des chemins entre B(x, r) et X \\ B(x, A r)")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--A', type=float, default=2.0)
    p.add_argument('--compare', action='store_true')

    p = add('wolff', cmd_wolff, "Bornes de Wolff pour la solution de Poisson")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--f', type=float, default=1.0)
    p.add_argument('--domain-r', type=float, default=None)

    p = add('cutoff', cmd_cutoff, "Fonction cutoff et constantes de Sobolev avec cutoff")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--r-out', type=float, default=None)
    p.add_argument('--probes', type=int, default=None)
    p.add_argument('--sweep-radii', type=_radii, default=None)

    p = add('harnack', cmd_harnack, "Estimation de la constante de Harnack")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--A', type=float, default=None)
    p.add_argument('--trials', type=int, default=None)

    p = add('poincare', cmd_poincare, "Estimation de la constante de Poincaré")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--A', type=float, default=2.0)
    p.add_argument('--sweep-radii', type=_radii, default=None)

    p = add('scaling-sweep', cmd_scaling_sweep, "Balayage des capacités et beta_p estimé")
    p.add_argument('--radii', type=_radii, required=True)
    p.add_argument('--A', type=float, default=2.0)

    p = add('llc', cmd_llc, "Connexité locale linéaire")
    p.add_argument('--r', type=float, required=True)
    p.add_argument('--A', type=float, default=3.0)

    p = add('cable', cmd_cable, "Système de câbles et raccord des fonctions d'échelle")
    p.add_argument('--tau', type=float, default=None)

    p = add('volume', cmd_volume, "Croissance du volume des boules")
    p.add_argument('--radii', type=_radii, required=True)

    p = add('principles', cmd_principles, "Contrôles aléatoires des principes")
    p.add_argument('--count', type=int, default=None)
    p.add_argument('--quick', action='store_true')

    p = add('verify-all', cmd_verify_all, "Suite complète des contrôles d'acceptation")
    p.add_argument('--quick', action='store_true')
    p.add_argument('--only', nargs='+', default=None)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Exécute une sous-commande.

    Args:
        argv (List[str], optional): Arguments (défaut: sys.argv[1:])

    Returns:
        int: Code de sortie (0, 1 ou 2)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    start = time.time()
    print_header()
    print_section(args.command.upper(), "⚙️")
    logger.info(f"=== Commande {args.command} ===")
    try:
        ctx = Context(args)
        code = args.handler(ctx, start)
    except ConvergenceError as e:
        logger.error(f"Non-convergence: {e}")
        print(f"\n❌ Non-convergence: {e}")
        return EXIT_ASSERTION
    except (PotentielError, OSError) as e:
        logger.error(f"Erreur d'entrée: {e}")
        print(f"\n❌ Erreur: {e}")
        return EXIT_INPUT

    duration = time.time() - start
    print("\n" + "=" * 50)
    print(f"⏱️ Temps d'exécution total: {duration:.2f} secondes")
    print("=" * 50 + "\n")
    logger.info(f"Commande {args.command} terminée en {duration:.2f} secondes (code {code})")
    return code


def main() -> int:
    """
    Fonction principale appelée par run.py.
    """
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
