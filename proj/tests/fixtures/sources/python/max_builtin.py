def max_of_list(values):
    if len(values) == 0:
        raise ValueError("empty list")
    return max(values)
