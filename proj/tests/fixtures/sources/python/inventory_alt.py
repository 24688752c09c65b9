class Inventory:
    def __init__(self):
        self.stock = {}
        self.prices = {}

    def add(self, name, price, quantity=1):
        if quantity < 1:
            raise ValueError("quantity must be positive")
        self.stock[name] = self.stock.get(name, 0) + quantity
        self.prices[name] = price

    def remove(self, name, quantity=1):
        have = self.stock.get(name, 0)
        if have < quantity:
            return False
        if have == quantity:
            del self.stock[name]
            del self.prices[name]
        else:
            self.stock[name] = have - quantity
        return True

    def total_value(self):
        return round(sum(self.prices[n] * q for n, q in self.stock.items()), 2)

    def cheapest(self, limit=3):
        names = sorted(self.stock, key=lambda n: (self.prices[n], n))
        return names[:limit]

    def report(self):
        out = [f"{n}: {self.stock[n]} x {self.prices[n]:.2f}" for n in sorted(self.stock)]
        out.append(f"total: {self.total_value():.2f}")
        return "\n".join(out)
