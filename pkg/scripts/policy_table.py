"""Verdict of every corpus query under every policy, as a plain table."""
from inet.config import PRECLUSION_POLICIES, Resolver, Scepticism
from inet.dsl import load_corpus
from inet.engine import query

WORD = {None: "none", "pos": "pos", "neg": "neg"}


def main():
    nf = load_corpus()
    policies = [p.replace(resolver=r) for p in PRECLUSION_POLICIES for r in Resolver]
    ext = PRECLUSION_POLICIES[0].replace(scepticism=Scepticism.EXTENSIONS)
    header = ["query"] + [f"{p.preclusion_scope.value}/{p.preclusion_validity.value}/{p.resolver.value}"
                          for p in policies] + ["extensions"]
    rows = []
    for q in nf.queries:
        g = nf.net(q.net)
        cells = [f"{q.net}: {q.subject}?{q.predicate}"]
        for cfg in policies + [ext]:
            v = query(g, q.subject, q.predicate, cfg).verdict
            cells.append(WORD[v.value if v else None])
        rows.append(cells)
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


if __name__ == "__main__":
    main()
