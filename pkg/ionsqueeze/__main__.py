from ionsqueeze.management import main

if __name__ == '__main__':
    main()
