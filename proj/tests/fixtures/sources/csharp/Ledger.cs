using System;
using System.Collections.Generic;
using System.Linq;

namespace Accounting
{
    public record Entry(DateTime Date, string Account, decimal Amount, string Memo);

    public class Ledger
    {
        private readonly List<Entry> entries = new List<Entry>();

        public void Post(string account, decimal amount, string memo = "")
        {
            if (string.IsNullOrWhiteSpace(account))
            {
                throw new ArgumentException("account required", nameof(account));
            }
            if (amount == 0m)
            {
                return;
            }
            entries.Add(new Entry(DateTime.UtcNow, account, amount, memo));
        }

        public decimal Balance(string account)
        {
            decimal sum = 0m;
            foreach (var e in entries)
            {
                if (e.Account == account)
                {
                    sum += e.Amount;
                }
            }
            return sum;
        }

        public IReadOnlyDictionary<string, decimal> Balances()
        {
            return entries
                .GroupBy(e => e.Account)
                .OrderBy(g => g.Key, StringComparer.Ordinal)
                .ToDictionary(g => g.Key, g => g.Sum(e => e.Amount));
        }

        public IEnumerable<Entry> Largest(int count)
        {
            return entries.OrderByDescending(e => Math.Abs(e.Amount)).Take(count);
        }
    }
}
