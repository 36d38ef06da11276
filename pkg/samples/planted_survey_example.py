import graphroot as gr


def run_survey():

    # planted squares of random trees with up to 2 extra edges
    instances = gr.gen_planted_batch(40, 30, 2, seed=1)

    # survey returns a regular pandas DataFrame
    raw = gr.survey(instances, raw=True)
    print("Per-instance results\n")
    print(raw.to_string(index=False))

    grouped = gr.survey(instances, n_interval=10).round(2)
    print("\nKernel sizes by vertex-count interval and k\n")
    print(grouped.to_string(index=False))


if __name__ == "__main__":
    import timeit

    start = timeit.default_timer()

    run_survey()

    stop = timeit.default_timer()
    execution_time = round(stop - start, 0)

    print("Program Executed in " + str(execution_time))
