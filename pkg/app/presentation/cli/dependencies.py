"""CLI dependencies"""
from dataclasses import dataclass

from app.application.use_cases.admissibility_use_cases import AdmissibilityUseCases
from app.application.use_cases.congruence_use_cases import CongruenceUseCases
from app.application.use_cases.counting_use_cases import CountingUseCases
from app.application.use_cases.cycle_basis_use_cases import CycleBasisUseCases
from app.application.use_cases.graph_use_cases import GraphUseCases
from app.application.use_cases.identity_use_cases import IdentityUseCases
from app.application.use_cases.polynomial_use_cases import PolynomialUseCases
from app.application.use_cases.search_use_cases import SearchUseCases
from app.application.use_cases.suite_use_cases import SuiteUseCases
from app.infrastructure.config.settings import settings
from app.infrastructure.repositories.graph_repository_impl import GraphRepositoryImpl


def get_graph_repository() -> GraphRepositoryImpl:
    """Get graph repository instance"""
    return GraphRepositoryImpl()


def get_polynomial_use_cases(graphs: GraphUseCases) -> PolynomialUseCases:
    """Get polynomial use cases with a fresh cycle-basis cache"""
    return PolynomialUseCases(CycleBasisUseCases(), graphs)


@dataclass
class UseCases:
    """Every use case of one CLI run, sharing polynomial and count caches"""
    repository: GraphRepositoryImpl
    graphs: GraphUseCases
    polynomials: PolynomialUseCases
    counting: CountingUseCases
    identities: IdentityUseCases
    congruences: CongruenceUseCases
    admissibility: AdmissibilityUseCases
    search: SearchUseCases
    suite: SuiteUseCases


def get_use_cases(budget: int = settings.COUNT_BUDGET, seed: int = settings.DEFAULT_SEED) -> UseCases:
    repository = get_graph_repository()
    graphs = GraphUseCases()
    polynomials = get_polynomial_use_cases(graphs)
    counting = CountingUseCases(polynomials, budget)
    identities = IdentityUseCases(polynomials, graphs)
    congruences = CongruenceUseCases(counting, polynomials, graphs)
    return UseCases(
        repository=repository,
        graphs=graphs,
        polynomials=polynomials,
        counting=counting,
        identities=identities,
        congruences=congruences,
        admissibility=AdmissibilityUseCases(repository, polynomials, counting, seed),
        search=SearchUseCases(graphs),
        suite=SuiteUseCases(identities, congruences, graphs),
    )
