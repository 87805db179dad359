# Independent oracle: prolonged fiber maps via sympy differentiation.
import sympy as sp, itertools, random
from fractions import Fraction
def multis(n,r):
    return list(itertools.combinations_with_replacement(range(n),r))
def jetbasis(n,r,rank):
    return [(s,j) for d in range(r+1) for s in multis(n,d) for j in range(rank)]
def fiber_rank(n, ops, src_rank, k, l, X, ufun_vals=None):
    # ops: function (list of sympy funcs p_j) -> list of sympy exprs (components)
    p=[sp.Function('p%d'%j)(*X) for j in range(src_rank)]
    comps=ops(p)
    rows=[]
    dom=jetbasis(n,k+l,src_rank)
    syms={}
    for (s,j) in dom:
        syms[(s,j)]=sp.Symbol('P%d_%s'%(j,''.join(map(str,s))))
    def repl(e):
        # replace derivatives of p by symbols
        e=e.doit()
        reps={}
        for d in e.atoms(sp.Derivative):
            f=d.expr
            j=int(str(f.func)[1:]) if str(f.func).startswith('p') else None
            if j is None: continue
            s=[]
            for v,c in d.variable_count: s+= [X.index(v)]*c
            reps[d]=syms[(tuple(sorted(s)),j)]
        e=e.xreplace(reps)
        for j in range(src_rank): e=e.subs(p[j],syms[((),j)])
        return e
    for c in comps:
        for d in range(l+1):
            for tau in multis(n,d):
                e=c
                for i in tau: e=sp.diff(e,X[i])
                e=repl(e)
                if ufun_vals: e=ufun_vals(e)
                rows.append([e.coeff(syms[b]) if True else 0 for b in dom])
    M=sp.Matrix(rows)
    return M.shape, M.rank()
x,t,y,z=sp.symbols('x t y z')
X2=[x,t]
grad=lambda p:[sp.diff(p[0],x),sp.diff(p[0],t)]
print('grad l=1', fiber_rank(2,grad,1,1,1,X2))
curl=lambda p:[sp.diff(p[1],x)-sp.diff(p[0],t)]
print('curl l=0', fiber_rank(2,curl,2,1,0,X2))
for l in range(4):
    print('deRham l',l, fiber_rank(2,grad,1,1,l+1,X2), fiber_rank(2,curl,2,1,l,X2))
