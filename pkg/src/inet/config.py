"""Policy knobs shared by the engine, the oracle and the reactive compiler."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Scope(str, Enum):
    OFF_PATH = "off-path"
    ON_PATH = "on-path"


class Validity(str, Enum):
    SPLIT = "split"
    TOTAL = "total"


class Scepticism(str, Enum):
    DIRECT = "sceptical"
    EXTENSIONS = "extensions"


class Resolver(str, Enum):
    P21 = "p21"  # drop every dominated source
    P22 = "p22"  # drop a source only when a better one contradicts it


@dataclass(frozen=True)
class PolicyConfig:
    preclusion_scope: Scope = Scope.OFF_PATH
    preclusion_validity: Validity = Validity.SPLIT
    scepticism: Scepticism = Scepticism.DIRECT
    resolver: Resolver = Resolver.P22

    def __str__(self) -> str:
        return "/".join(v.value for v in (self.preclusion_scope, self.preclusion_validity,
                                          self.scepticism, self.resolver))

    def replace(self, **kw) -> "PolicyConfig":
        return PolicyConfig(**{**self.__dict__, **kw})


DEFAULT = PolicyConfig()

# the four preclusion variants, all directly sceptical
PRECLUSION_POLICIES = tuple(
    PolicyConfig(scope, validity)
    for scope in Scope for validity in Validity
)


class UnsupportedPolicy(ValueError):
    pass
