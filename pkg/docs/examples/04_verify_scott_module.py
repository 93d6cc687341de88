"""Check Brauer indecomposability of Sc(G x G', Delta P) for two catalog pairs."""

from collections import Counter

from wreathbrauer import catalog
from wreathbrauer.verify import verify_marked

for ident in ("wreathP-n2", "c4c4-s3"):
    mg = catalog.load(ident)
    rep = verify_marked(mg, mg)
    routes = Counter(v.route for v in rep.verdicts)
    print(f"{ident} x {ident}: overall {rep.overall}, consistent {rep.consistent}, "
          f"{len(rep.verdicts)} classes of Delta Q")
    for route, count in sorted(routes.items()):
        print(f"  {route:<26} {count}")
