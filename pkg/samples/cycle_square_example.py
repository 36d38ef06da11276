import graphroot as gr
from graphroot.core import compute_square, cycle_graph


def run_example():

    # the square of a 7-cycle has no tree root, but the cycle itself is a root
    g = compute_square(cycle_graph(range(7)))

    for k in range(3):
        solution = gr.min_square_root(g, k)
        if solution is None:
            print(f"k={k}: no root with at most {g.n - 1 + k} edges")
            continue
        print(f"k={k}: root with {solution.edge_count} edges")
        print(f"  rule applications: {solution.trace.rule_counts()}")
        print(f"  edges: {[tuple(e) for e in solution.root.edges()]}")

    best = gr.max_root_exact(g)
    print(f"maximum root keeps {best.edge_count} of {g.m} edges")


if __name__ == "__main__":
    import timeit

    start = timeit.default_timer()

    run_example()

    stop = timeit.default_timer()
    execution_time = round(stop - start, 2)

    print("Program Executed in " + str(execution_time))
