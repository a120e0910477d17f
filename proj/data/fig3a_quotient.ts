# bisimulation quotient of fig3a.ts
states: A B C
edges: A->A A->B A->C B->B C->C
atom p: B
